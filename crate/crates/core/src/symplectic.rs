//! Symplectic linear algebra on 2N-dimensional phase space.
//!
//! Quadratures are ordered xpxp: (x1, p1, ..., xN, pN). The symplectic form
//! is Omega = omega ^ (direct sum N) with omega = [[0, 1], [-1, 0]], and a
//! matrix S is symplectic when S * Omega * S^T = Omega.

use nalgebra::{DMatrix, Matrix2};

use crate::error::{Error, Result};
use crate::tolerances::TOL_SYM;

/// Single-mode symplectic form omega = [[0, 1], [-1, 0]].
pub(crate) fn omega2() -> Matrix2<f64> {
    Matrix2::new(0.0, 1.0, -1.0, 0.0)
}

/// Rotation R(theta) = [[cos, sin], [-sin, cos]]; symplectic and orthogonal.
pub(crate) fn rotation2(theta: f64) -> Matrix2<f64> {
    let (s, c) = theta.sin_cos();
    Matrix2::new(c, s, -s, c)
}

/// 2N x 2N block-diagonal symplectic form for `n_modes` modes.
pub(crate) fn form_matrix(n_modes: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(2 * n_modes, 2 * n_modes);
    for k in 0..n_modes {
        m[(2 * k, 2 * k + 1)] = 1.0;
        m[(2 * k + 1, 2 * k)] = -1.0;
    }
    m
}

/// Identity everywhere except `block` on the (x, p) rows of 0-based `mode`.
pub(crate) fn embed_block(n_modes: usize, mode: usize, block: &Matrix2<f64>) -> DMatrix<f64> {
    let mut m = DMatrix::identity(2 * n_modes, 2 * n_modes);
    m[(2 * mode, 2 * mode)] = block[(0, 0)];
    m[(2 * mode, 2 * mode + 1)] = block[(0, 1)];
    m[(2 * mode + 1, 2 * mode)] = block[(1, 0)];
    m[(2 * mode + 1, 2 * mode + 1)] = block[(1, 1)];
    m
}

fn check_even_square(m: &DMatrix<f64>) -> Result<usize> {
    let (r, c) = m.shape();
    if r != c || r == 0 || r % 2 != 0 {
        return Err(Error::InvalidDimension(format!(
            "expected a 2Nx2N matrix with N >= 1, got {r}x{c}"
        )));
    }
    Ok(r / 2)
}

/// The symplectic form Omega for a fixed number of modes.
#[derive(Clone, Debug)]
pub struct SymplecticForm {
    n_modes: usize,
    matrix: DMatrix<f64>,
}

impl SymplecticForm {
    pub fn new(n_modes: usize) -> Result<Self> {
        if n_modes == 0 {
            return Err(Error::InvalidDimension(
                "symplectic form needs at least 1 mode".into(),
            ));
        }
        Ok(Self {
            n_modes,
            matrix: form_matrix(n_modes),
        })
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }
}

/// Builds the block-diagonal form Omega for `n_modes` modes.
pub fn make_symplectic_form(n_modes: usize) -> Result<SymplecticForm> {
    SymplecticForm::new(n_modes)
}

/// Whether `matrix` preserves the symplectic form within `tolerance`
/// (max-norm of S*Omega*S^T - Omega). Errors on odd or non-square input.
pub fn is_symplectic(matrix: &DMatrix<f64>, tolerance: f64) -> Result<bool> {
    Ok(symplectic_residual(matrix)? <= tolerance)
}

/// Max-norm of S*Omega*S^T - Omega.
pub fn symplectic_residual(matrix: &DMatrix<f64>) -> Result<f64> {
    let n = check_even_square(matrix)?;
    let omega = form_matrix(n);
    Ok((matrix * &omega * matrix.transpose() - &omega).amax())
}

/// A validated real 2N x 2N symplectic matrix.
#[derive(Clone, Debug)]
pub struct SymplecticMatrix {
    n_modes: usize,
    matrix: DMatrix<f64>,
}

impl SymplecticMatrix {
    /// Validates at the default tolerance [`TOL_SYM`].
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        Self::with_tolerance(matrix, TOL_SYM)
    }

    /// Validates at a caller-chosen tolerance.
    pub fn with_tolerance(matrix: DMatrix<f64>, tolerance: f64) -> Result<Self> {
        let n_modes = check_even_square(&matrix)?;
        let residual = symplectic_residual(&matrix)?;
        if residual > tolerance {
            return Err(Error::NotSymplectic { residual });
        }
        let det = matrix.determinant();
        if (det - 1.0).abs() > 1e-10_f64.max(tolerance) {
            return Err(Error::NotSymplectic {
                residual: (det - 1.0).abs(),
            });
        }
        Ok(Self { n_modes, matrix })
    }

    /// Constructor for matrices symplectic by construction (products,
    /// embeddings, permutations); checked only under debug assertions.
    pub(crate) fn from_trusted(n_modes: usize, matrix: DMatrix<f64>) -> Self {
        debug_assert_eq!(matrix.nrows(), 2 * n_modes);
        debug_assert_eq!(matrix.ncols(), 2 * n_modes);
        debug_assert!(
            symplectic_residual(&matrix)
                .map(|r| r <= 1e-6 * (1.0 + matrix.amax().powi(2)))
                .unwrap_or(false),
            "trusted matrix is far from symplectic"
        );
        Self { n_modes, matrix }
    }

    pub fn identity(n_modes: usize) -> Result<Self> {
        if n_modes == 0 {
            return Err(Error::InvalidDimension(
                "symplectic matrix needs at least 1 mode".into(),
            ));
        }
        Ok(Self {
            n_modes,
            matrix: DMatrix::identity(2 * n_modes, 2 * n_modes),
        })
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.matrix
    }

    /// Group inverse Omega * S^T * Omega^T; exact up to roundoff, no solver.
    pub fn inverse(&self) -> SymplecticMatrix {
        let omega = form_matrix(self.n_modes);
        let inv = &omega * self.matrix.transpose() * omega.transpose();
        SymplecticMatrix::from_trusted(self.n_modes, inv)
    }
}

/// Block-diagonal composition; mode counts add.
pub fn direct_sum(a: &SymplecticMatrix, b: &SymplecticMatrix) -> SymplecticMatrix {
    let n = a.n_modes() + b.n_modes();
    let da = 2 * a.n_modes();
    let db = 2 * b.n_modes();
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    m.view_mut((0, 0), (da, da)).copy_from(a.matrix());
    m.view_mut((da, da), (db, db)).copy_from(b.matrix());
    SymplecticMatrix::from_trusted(n, m)
}

/// Symplectic permutation exchanging the (x, p) blocks of two 1-based modes.
pub(crate) fn mode_swap(n_modes: usize, i: usize, j: usize) -> Result<SymplecticMatrix> {
    for idx in [i, j] {
        if idx == 0 || idx > n_modes {
            return Err(Error::InvalidIndex {
                index: idx,
                n_modes,
            });
        }
    }
    let mut m = DMatrix::identity(2 * n_modes, 2 * n_modes);
    if i != j {
        let (a, b) = (i - 1, j - 1);
        for off in 0..2 {
            m[(2 * a + off, 2 * a + off)] = 0.0;
            m[(2 * b + off, 2 * b + off)] = 0.0;
            m[(2 * a + off, 2 * b + off)] = 1.0;
            m[(2 * b + off, 2 * a + off)] = 1.0;
        }
    }
    Ok(SymplecticMatrix::from_trusted(n_modes, m))
}

/// The three trace-free generators of Sp(2, R):
/// Sigma1 = [[0,1],[1,0]], Sigma2 = omega, Sigma3 = [[1,0],[0,-1]].
#[derive(Clone, Debug)]
pub struct GeneratorBasis {
    sigma1: Matrix2<f64>,
    sigma2: Matrix2<f64>,
    sigma3: Matrix2<f64>,
}

impl Default for GeneratorBasis {
    fn default() -> Self {
        Self::new()
    }
}

impl GeneratorBasis {
    pub fn new() -> Self {
        Self {
            sigma1: Matrix2::new(0.0, 1.0, 1.0, 0.0),
            sigma2: omega2(),
            sigma3: Matrix2::new(1.0, 0.0, 0.0, -1.0),
        }
    }

    pub fn sigma1(&self) -> &Matrix2<f64> {
        &self.sigma1
    }

    pub fn sigma2(&self) -> &Matrix2<f64> {
        &self.sigma2
    }

    pub fn sigma3(&self) -> &Matrix2<f64> {
        &self.sigma3
    }

    /// Coefficients (c1, c2, c3) of M in the generator basis via Frobenius
    /// projection; each generator has squared Frobenius norm 2.
    pub fn project(&self, m: &Matrix2<f64>) -> (f64, f64, f64) {
        let dot = |g: &Matrix2<f64>| (g.transpose() * m).trace() / 2.0;
        (dot(&self.sigma1), dot(&self.sigma2), dot(&self.sigma3))
    }

    /// c1*Sigma1 + c2*Sigma2 + c3*Sigma3.
    pub fn combine(&self, c1: f64, c2: f64, c3: f64) -> Matrix2<f64> {
        c1 * self.sigma1 + c2 * self.sigma2 + c3 * self.sigma3
    }
}

/// Traceless single-mode symplectic operation with realized matrix
/// [[gamma, alpha + beta], [alpha - beta, -gamma]],
/// gamma = sqrt(beta^2 - alpha^2 - 1) >= 0, feasible for beta >= sqrt(alpha^2 + 1).
#[derive(Clone, Copy, Debug)]
pub struct SingleModeOp {
    alpha: f64,
    beta: f64,
    gamma: f64,
}

impl SingleModeOp {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::InvalidParameter {
                name: "alpha",
                value: alpha,
                requirement: "must be finite",
            });
        }
        if !beta.is_finite() {
            return Err(Error::InvalidParameter {
                name: "beta",
                value: beta,
                requirement: "must be finite",
            });
        }
        let h = alpha.hypot(1.0);
        if beta < h {
            return Err(Error::ConstraintViolation { alpha, beta });
        }
        // Factored form of beta^2 - alpha^2 - 1: exact zero on the boundary
        // beta = hypot(alpha, 1), no cancellation next to it.
        let gamma = ((beta - h) * (beta + h)).max(0.0).sqrt();
        Ok(Self { alpha, beta, gamma })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Realized 2x2 matrix; trace-free by construction.
    pub fn matrix(&self) -> Matrix2<f64> {
        Matrix2::new(
            self.gamma,
            self.alpha + self.beta,
            self.alpha - self.beta,
            -self.gamma,
        )
    }

    /// The realized matrix as a validated one-mode symplectic.
    pub fn as_symplectic(&self) -> SymplecticMatrix {
        SymplecticMatrix::from_trusted(1, embed_block(1, 0, &self.matrix()))
    }
}

/// Builds the traceless operation for the given (alpha, beta).
pub fn make_single_mode_op(alpha: f64, beta: f64) -> Result<SingleModeOp> {
    SingleModeOp::new(alpha, beta)
}

/// Euler parameterization of a single-mode symplectic:
/// rotation(phi) * diag(xi, 1/xi) * rotation(theta).
#[derive(Clone, Copy, Debug)]
pub struct EulerAngles {
    xi: f64,
    theta: f64,
    phi: f64,
}

impl EulerAngles {
    /// `theta` is normalized into [0, 2*pi); `phi` is kept as given.
    pub fn new(xi: f64, theta: f64, phi: f64) -> Result<Self> {
        if !(xi.is_finite() && xi > 0.0) {
            return Err(Error::InvalidSqueezing { xi });
        }
        if !theta.is_finite() {
            return Err(Error::InvalidParameter {
                name: "theta",
                value: theta,
                requirement: "must be finite",
            });
        }
        if !phi.is_finite() {
            return Err(Error::InvalidParameter {
                name: "phi",
                value: phi,
                requirement: "must be finite",
            });
        }
        Ok(Self {
            xi,
            theta: theta.rem_euclid(std::f64::consts::TAU),
            phi,
        })
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

/// Composes rotation(phi) * diag(xi, 1/xi) * rotation(theta) as ordered.
pub fn euler_compose(angles: &EulerAngles) -> SymplecticMatrix {
    let squeeze = Matrix2::new(angles.xi, 0.0, 0.0, 1.0 / angles.xi);
    let m = rotation2(angles.phi) * squeeze * rotation2(angles.theta);
    SymplecticMatrix::from_trusted(1, embed_block(1, 0, &m))
}

/// Euler angles reproducing the realized matrix of `op`.
///
/// Trace-freeness pins phi = pi/2 - theta; the remaining entry equations give
/// xi = beta + sqrt(beta^2 - 1) and 2*theta = atan2(gamma, -alpha). At
/// beta = 1 the squeezing degenerates (xi = 1) and theta = 0 is chosen.
pub fn single_mode_op_to_euler(op: &SingleModeOp) -> EulerAngles {
    let beta = op.beta();
    let shift = (beta * beta - 1.0).max(0.0).sqrt();
    let xi = beta + shift;
    let theta = if shift == 0.0 {
        0.0
    } else {
        0.5 * op.gamma().atan2(-op.alpha())
    };
    let phi = std::f64::consts::FRAC_PI_2 - theta;
    EulerAngles::new(xi, theta, phi).expect("angles from a valid op are valid")
}

/// Embeds `op` on the (x, p) block of a 1-based mode, identity elsewhere.
pub fn embed_on_mode(
    op: &SingleModeOp,
    mode_index: usize,
    n_modes: usize,
) -> Result<SymplecticMatrix> {
    if mode_index == 0 || mode_index > n_modes {
        return Err(Error::InvalidIndex {
            index: mode_index,
            n_modes,
        });
    }
    Ok(SymplecticMatrix::from_trusted(
        n_modes,
        embed_block(n_modes, mode_index - 1, &op.matrix()),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn mat2(m: &DMatrix<f64>) -> Matrix2<f64> {
        Matrix2::new(m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)])
    }

    #[test]
    fn form_single_mode_is_omega() {
        let f = make_symplectic_form(1).unwrap();
        let expect = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]);
        assert_eq!(f.matrix(), &expect);
    }

    #[test]
    fn form_two_modes_is_block_diagonal() {
        let f = make_symplectic_form(2).unwrap();
        let expect = DMatrix::from_row_slice(
            4,
            4,
            &[
                0.0, 1.0, 0.0, 0.0, //
                -1.0, 0.0, 0.0, 0.0, //
                0.0, 0.0, 0.0, 1.0, //
                0.0, 0.0, -1.0, 0.0,
            ],
        );
        assert_eq!(f.matrix(), &expect);
    }

    #[test]
    fn form_invariants() {
        for n in [1, 2, 5] {
            let omega = make_symplectic_form(n).unwrap().matrix().clone();
            assert_eq!((&omega + omega.transpose()).amax(), 0.0);
            let sq = &omega * &omega;
            assert_eq!((sq + DMatrix::identity(2 * n, 2 * n)).amax(), 0.0);
            assert_abs_diff_eq!(omega.determinant(), 1.0, epsilon = 1e-12);
            let ortho = &omega * omega.transpose();
            assert_eq!((ortho - DMatrix::identity(2 * n, 2 * n)).amax(), 0.0);
        }
    }

    #[test]
    fn form_zero_modes_rejected() {
        assert!(matches!(
            make_symplectic_form(0),
            Err(Error::InvalidDimension(_))
        ));
    }

    #[test]
    fn is_symplectic_examples() {
        for n in [1, 2, 3] {
            let id = DMatrix::identity(2 * n, 2 * n);
            assert!(is_symplectic(&id, 0.0).unwrap());
        }
        let omega = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]);
        assert!(is_symplectic(&omega, 0.0).unwrap());
        // diag(2, 1) rescales the form by 2, so it is not symplectic.
        let d = DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 1.0]);
        assert!(!is_symplectic(&d, 1e-10).unwrap());
        assert_abs_diff_eq!(symplectic_residual(&d).unwrap(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn is_symplectic_rejects_odd_dimension() {
        let m = DMatrix::<f64>::identity(3, 3);
        assert!(matches!(
            is_symplectic(&m, 1e-10),
            Err(Error::InvalidDimension(_))
        ));
    }

    #[test]
    fn symplectic_matrix_validates() {
        let omega = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]);
        assert!(SymplecticMatrix::new(omega).is_ok());
        let bad = DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 1.0]);
        assert!(matches!(
            SymplecticMatrix::new(bad),
            Err(Error::NotSymplectic { .. })
        ));
    }

    #[test]
    fn symplectic_inverse_is_group_inverse() {
        let op = make_single_mode_op(0.7, 2.0).unwrap();
        let s = embed_on_mode(&op, 2, 3).unwrap();
        let prod = s.matrix() * s.inverse().matrix();
        assert!((prod - DMatrix::identity(6, 6)).amax() <= 1e-12);
    }

    #[test]
    fn euler_identity_and_squeezer() {
        let id = euler_compose(&EulerAngles::new(1.0, 0.0, 0.0).unwrap());
        assert!((id.matrix() - DMatrix::identity(2, 2)).amax() <= 1e-15);

        let z = euler_compose(&EulerAngles::new(2.0, 0.0, 0.0).unwrap());
        let expect = DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 0.5]);
        assert!((z.matrix() - expect).amax() <= 1e-15);
    }

    #[test]
    fn euler_quarter_rotations_compose() {
        let m = euler_compose(&EulerAngles::new(1.0, FRAC_PI_4, FRAC_PI_4).unwrap());
        let r = rotation2(FRAC_PI_2);
        assert!((mat2(m.matrix()) - r).amax() <= 1e-15);
    }

    #[test]
    fn euler_rejects_nonpositive_squeezing() {
        assert!(matches!(
            EulerAngles::new(0.0, 0.0, 0.0),
            Err(Error::InvalidSqueezing { .. })
        ));
        assert!(matches!(
            EulerAngles::new(-1.0, 0.0, 0.0),
            Err(Error::InvalidSqueezing { .. })
        ));
    }

    #[test]
    fn single_mode_op_examples() {
        let w = make_single_mode_op(0.0, 1.0).unwrap();
        assert_eq!(w.matrix(), omega2());

        let m = make_single_mode_op(0.0, 2.0).unwrap().matrix();
        let sqrt3 = 3.0_f64.sqrt();
        assert!((m - Matrix2::new(sqrt3, 2.0, -2.0, -sqrt3)).amax() <= 1e-15);

        // gamma = 0 boundary case.
        let b = make_single_mode_op(1.0, 2.0_f64.sqrt()).unwrap().matrix();
        let s2 = 2.0_f64.sqrt();
        assert!((b - Matrix2::new(0.0, 1.0 + s2, 1.0 - s2, 0.0)).amax() <= 1e-15);
    }

    #[test]
    fn single_mode_op_rejects_infeasible_beta() {
        assert!(matches!(
            make_single_mode_op(0.0, 0.5),
            Err(Error::ConstraintViolation { .. })
        ));
        assert!(matches!(
            make_single_mode_op(2.0, 2.0),
            Err(Error::ConstraintViolation { .. })
        ));
    }

    #[test]
    fn single_mode_op_is_traceless_and_symplectic() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let basis = GeneratorBasis::new();
        for _ in 0..200 {
            let alpha: f64 = rng.random_range(-4.0..4.0);
            let beta = rng.random_range(alpha.hypot(1.0)..10.0);
            let op = make_single_mode_op(alpha, beta).unwrap();
            let m = op.matrix();
            assert_eq!(m.trace(), 0.0);
            let d = embed_block(1, 0, &m);
            assert!(is_symplectic(&d, 1e-10).unwrap());
            // Generator decomposition alpha*Sigma1 + beta*Sigma2 + gamma*Sigma3.
            let (c1, c2, c3) = basis.project(&m);
            let rebuilt = basis.combine(c1, c2, c3);
            assert!((rebuilt - m).amax() <= 1e-12);
            assert_abs_diff_eq!(c1, alpha, epsilon = 1e-12);
            assert_abs_diff_eq!(c2, beta, epsilon = 1e-12);
            assert_abs_diff_eq!(c3, op.gamma(), epsilon = 1e-12);
        }
    }

    #[test]
    fn op_to_euler_extremal_point() {
        let angles = single_mode_op_to_euler(&make_single_mode_op(0.0, 1.0).unwrap());
        assert_eq!(angles.xi(), 1.0);
        assert_eq!(angles.theta(), 0.0);
        assert_abs_diff_eq!(angles.phi(), FRAC_PI_2, epsilon = 1e-15);
        let m = euler_compose(&angles);
        assert!((mat2(m.matrix()) - omega2()).amax() <= 1e-15);
    }

    #[test]
    fn op_to_euler_pure_squeezing_value() {
        // (alpha, beta) = (0, 2) corresponds to xi = 2 + sqrt(3).
        let angles = single_mode_op_to_euler(&make_single_mode_op(0.0, 2.0).unwrap());
        assert_abs_diff_eq!(angles.xi(), 3.732_050_807_568_877, epsilon = 1e-12);
        assert_abs_diff_eq!(angles.xi(), 2.0 + 3.0_f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn op_to_euler_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..100 {
            let alpha: f64 = rng.random_range(-6.0..6.0);
            let beta = rng.random_range(alpha.hypot(1.0)..10.0);
            let op = make_single_mode_op(alpha, beta).unwrap();
            let angles = single_mode_op_to_euler(&op);
            assert_abs_diff_eq!(angles.phi(), FRAC_PI_2 - angles.theta(), epsilon = 1e-15);
            let m = euler_compose(&angles);
            assert!((mat2(m.matrix()) - op.matrix()).amax() <= 1e-10);
        }
    }

    #[test]
    fn traceless_euler_family_has_zero_trace() {
        // phi = pi/2 - theta makes the composed trace vanish identically.
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..200 {
            let xi: f64 = rng.random_range(0.1..8.0);
            let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            let angles = EulerAngles::new(xi, theta, FRAC_PI_2 - theta).unwrap();
            let tr = euler_compose(&angles).matrix().trace();
            assert!(tr.abs() <= 1e-12 * xi.max(1.0 / xi));
        }
    }

    #[test]
    fn embed_on_mode_places_block() {
        let w = make_single_mode_op(0.0, 1.0).unwrap();
        let m1 = embed_on_mode(&w, 1, 2).unwrap();
        let mut expect = DMatrix::identity(4, 4);
        expect[(0, 0)] = 0.0;
        expect[(0, 1)] = 1.0;
        expect[(1, 0)] = -1.0;
        expect[(1, 1)] = 0.0;
        assert_eq!(m1.matrix(), &expect);

        let m2 = embed_on_mode(&w, 2, 2).unwrap();
        let mut expect = DMatrix::identity(4, 4);
        expect[(2, 2)] = 0.0;
        expect[(2, 3)] = 1.0;
        expect[(3, 2)] = -1.0;
        expect[(3, 3)] = 0.0;
        assert_eq!(m2.matrix(), &expect);

        assert!(is_symplectic(m1.matrix(), 1e-12).unwrap());
        assert!(is_symplectic(m2.matrix(), 1e-12).unwrap());
    }

    #[test]
    fn embed_on_mode_rejects_out_of_range() {
        let w = make_single_mode_op(0.0, 1.0).unwrap();
        assert!(matches!(
            embed_on_mode(&w, 0, 2),
            Err(Error::InvalidIndex { .. })
        ));
        assert!(matches!(
            embed_on_mode(&w, 3, 2),
            Err(Error::InvalidIndex { .. })
        ));
    }

    #[test]
    fn direct_sum_examples() {
        let i1 = SymplecticMatrix::identity(1).unwrap();
        let sum = direct_sum(&i1, &i1);
        assert_eq!(sum.matrix(), &DMatrix::identity(4, 4));

        let w = make_single_mode_op(0.0, 1.0).unwrap().as_symplectic();
        let ww = direct_sum(&w, &w);
        assert_eq!(ww.matrix(), make_symplectic_form(2).unwrap().matrix());
        assert!(is_symplectic(ww.matrix(), 1e-12).unwrap());
    }

    #[test]
    fn mode_swap_exchanges_blocks() {
        let p = mode_swap(3, 1, 3).unwrap();
        assert!(is_symplectic(p.matrix(), 1e-12).unwrap());
        let op = make_single_mode_op(0.5, 1.5).unwrap();
        let s3 = embed_on_mode(&op, 3, 3).unwrap();
        let moved = p.matrix() * s3.matrix() * p.matrix().transpose();
        let s1 = embed_on_mode(&op, 1, 3).unwrap();
        assert!((moved - s1.matrix()).amax() <= 1e-15);
    }

    #[test]
    fn generator_basis_invariants() {
        let b = GeneratorBasis::new();
        assert_eq!(b.sigma1().trace(), 0.0);
        assert_eq!(b.sigma2().trace(), 0.0);
        assert_eq!(b.sigma3().trace(), 0.0);
        assert_eq!(*b.sigma2(), omega2());
        // Together with the identity the generators span all 2x2 matrices.
        let vecs = [Matrix2::identity(), *b.sigma1(), *b.sigma2(), *b.sigma3()];
        let mut vec_mat = DMatrix::zeros(4, 4);
        for (col, m) in vecs.iter().enumerate() {
            vec_mat[(0, col)] = m[(0, 0)];
            vec_mat[(1, col)] = m[(0, 1)];
            vec_mat[(2, col)] = m[(1, 0)];
            vec_mat[(3, col)] = m[(1, 1)];
        }
        assert!(vec_mat.determinant().abs() > 1e-12);
    }

    #[test]
    fn rotation_angle_sum_example() {
        let quarter = rotation2(FRAC_PI_2);
        let half = rotation2(PI);
        assert!((quarter * quarter - half).amax() <= 1e-15);
    }
}
