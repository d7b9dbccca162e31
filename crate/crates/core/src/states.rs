//! Covariance matrices of Gaussian states, their validity checks, normal
//! forms, and state factories.
//!
//! Convention: quadratures ordered xpxp and vacuum variance 1, so the vacuum
//! covariance matrix is the identity. A state is physical (bona fide) when
//! sigma + i*Omega >= 0, equivalently every symplectic eigenvalue nu >= 1,
//! and pure exactly when every nu = 1.

use nalgebra::{DMatrix, DVector, Matrix2, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::symplectic::{direct_sum, embed_block, form_matrix, rotation2, SymplecticMatrix};
use crate::tolerances::{TOL_BONA_FIDE, TOL_PURITY, TOL_RECONSTRUCTION, TOL_SYMMETRY};

/// Covariance matrix of an N-mode Gaussian state (2N x 2N, xpxp order).
#[derive(Clone, Debug)]
pub struct CovarianceMatrix {
    n_modes: usize,
    matrix: DMatrix<f64>,
}

/// Outcome of the three physicality checks on a covariance matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ValidityReport {
    /// Entrywise symmetry within tolerance.
    pub symmetric: bool,
    /// sigma + i*Omega >= 0 within tolerance (all nu >= 1).
    pub bona_fide: bool,
    /// All symplectic eigenvalues equal 1 within tolerance.
    pub pure: bool,
}

impl ValidityReport {
    pub fn all_ok(&self) -> bool {
        self.symmetric && self.bona_fide && self.pure
    }
}

/// Symplectic congruence W and spectrum with W*sigma*W^T = diag(nu_k paired).
#[derive(Clone, Debug)]
pub struct WilliamsonDecomposition {
    /// The congruence bringing sigma to normal form.
    pub w: SymplecticMatrix,
    /// Symplectic eigenvalues, descending, one per mode.
    pub spectrum: Vec<f64>,
}

impl WilliamsonDecomposition {
    /// diag(nu_1, nu_1, ..., nu_N, nu_N).
    pub fn diagonal(&self) -> DMatrix<f64> {
        let n = self.spectrum.len();
        let mut d = DMatrix::zeros(2 * n, 2 * n);
        for (k, nu) in self.spectrum.iter().enumerate() {
            d[(2 * k, 2 * k)] = *nu;
            d[(2 * k + 1, 2 * k + 1)] = *nu;
        }
        d
    }
}

/// Normal form of a pure state under local operations across the 1 | rest cut.
#[derive(Clone, Debug)]
pub struct SchmidtForm {
    /// Block-diagonal local symplectic (mode 1) + (modes 2..N) realizing the form.
    pub local_w: SymplecticMatrix,
    /// local_w * sigma * local_w^T: two-mode squeezed pattern + vacuum modes.
    pub schmidt_cm: CovarianceMatrix,
    /// Schmidt parameter a = sqrt(det sigma_1) >= 1.
    pub a: f64,
}

fn orthogonalize(v: &mut DVector<f64>, cols: &[DVector<f64>]) {
    for c in cols {
        let proj = c.dot(v);
        v.axpy(-proj, c, 1.0);
    }
}

/// Smallest eigenvalue of sigma + i*Omega via the real symmetric embedding
/// [[sigma, -Omega], [Omega, sigma]] (eigenvalues doubled in multiplicity).
fn bona_fide_min_eigenvalue(sym: &DMatrix<f64>, n_modes: usize) -> f64 {
    let d = 2 * n_modes;
    let omega = form_matrix(n_modes);
    let mut big = DMatrix::zeros(2 * d, 2 * d);
    big.view_mut((0, 0), (d, d)).copy_from(sym);
    big.view_mut((d, d), (d, d)).copy_from(sym);
    big.view_mut((0, d), (d, d)).copy_from(&(-&omega));
    big.view_mut((d, 0), (d, d)).copy_from(&omega);
    SymmetricEigen::new(big).eigenvalues.min()
}

fn spectrum_of(sym: &DMatrix<f64>, n_modes: usize) -> Vec<f64> {
    let prod = form_matrix(n_modes) * sym;
    let mut moduli: Vec<f64> = prod
        .complex_eigenvalues()
        .iter()
        .map(|z| z.norm())
        .collect();
    moduli.sort_by(|a, b| b.partial_cmp(a).expect("eigenvalue moduli are finite"));
    (0..n_modes)
        .map(|k| 0.5 * (moduli[2 * k] + moduli[2 * k + 1]))
        .collect()
}

/// Identity except `b0` on mode 1 and `b1` on mode 2 (0-based 0 and 1).
fn two_block(n_modes: usize, b0: &Matrix2<f64>, b1: &Matrix2<f64>) -> DMatrix<f64> {
    let mut m = embed_block(n_modes, 0, b0);
    m[(2, 2)] = b1[(0, 0)];
    m[(2, 3)] = b1[(0, 1)];
    m[(3, 2)] = b1[(1, 0)];
    m[(3, 3)] = b1[(1, 1)];
    m
}

/// Angles (u, v) with rotation(u) * K * rotation(v) diagonal, largest
/// singular value first; both factors are proper rotations.
fn rot_svd_angles(k: &Matrix2<f64>) -> (f64, f64) {
    let e = 0.5 * (k[(0, 0)] + k[(1, 1)]);
    let f = 0.5 * (k[(0, 0)] - k[(1, 1)]);
    let g = 0.5 * (k[(1, 0)] + k[(0, 1)]);
    let h = 0.5 * (k[(1, 0)] - k[(0, 1)]);
    let a1 = g.atan2(f);
    let a2 = h.atan2(e);
    (0.5 * (a2 + a1), 0.5 * (a2 - a1))
}

impl CovarianceMatrix {
    /// Wraps a 2N x 2N matrix; shape is checked, physicality is not
    /// (see [`CovarianceMatrix::validate`]).
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        let (r, c) = matrix.shape();
        if r != c || r == 0 || r % 2 != 0 {
            return Err(Error::InvalidDimension(format!(
                "covariance matrix must be 2Nx2N with N >= 1, got {r}x{c}"
            )));
        }
        Ok(Self {
            n_modes: r / 2,
            matrix,
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

    /// (sigma + sigma^T) / 2 as a plain matrix.
    pub(crate) fn symmetrized_matrix(&self) -> DMatrix<f64> {
        0.5 * (&self.matrix + self.matrix.transpose())
    }

    /// The symmetrized covariance matrix.
    pub fn symmetrized(&self) -> CovarianceMatrix {
        CovarianceMatrix {
            n_modes: self.n_modes,
            matrix: self.symmetrized_matrix(),
        }
    }

    /// Runs the symmetry, physicality, and purity checks.
    pub fn validate(&self) -> ValidityReport {
        let scale = self.matrix.amax().max(1.0);
        let symmetric = (&self.matrix - self.matrix.transpose()).amax() <= TOL_SYMMETRY * scale;
        let sym = self.symmetrized_matrix();
        let bona_fide = bona_fide_min_eigenvalue(&sym, self.n_modes) >= TOL_BONA_FIDE;
        let pure = bona_fide && {
            let spectrum = spectrum_of(&sym, self.n_modes);
            spectrum
                .iter()
                .map(|nu| (nu - 1.0).abs())
                .fold(0.0_f64, f64::max)
                <= TOL_PURITY
        };
        ValidityReport {
            symmetric,
            bona_fide,
            pure,
        }
    }

    /// Symplectic eigenvalues, descending.
    ///
    /// Moduli of the eigenvalues of Omega*sigma, which pair up as +/- i*nu;
    /// requires a bona fide matrix so the pairing is meaningful.
    pub fn symplectic_spectrum(&self) -> Result<Vec<f64>> {
        let sym = self.symmetrized_matrix();
        let min_eigenvalue = bona_fide_min_eigenvalue(&sym, self.n_modes);
        if min_eigenvalue < TOL_BONA_FIDE {
            return Err(Error::NotBonaFide { min_eigenvalue });
        }
        Ok(spectrum_of(&sym, self.n_modes))
    }

    /// Errors unless the state is bona fide and pure within tolerance.
    pub(crate) fn require_pure(&self) -> Result<()> {
        let spectrum = self.symplectic_spectrum()?;
        let max_deviation = spectrum
            .iter()
            .map(|nu| (nu - 1.0).abs())
            .fold(0.0_f64, f64::max);
        if max_deviation > TOL_PURITY {
            return Err(Error::NotPure { max_deviation });
        }
        Ok(())
    }

    /// Covariance matrix of the listed 1-based modes, in the order given.
    pub fn reduce(&self, modes: &[usize]) -> Result<CovarianceMatrix> {
        if modes.is_empty() {
            return Err(Error::InvalidIndex {
                index: 0,
                n_modes: self.n_modes,
            });
        }
        for (i, &m) in modes.iter().enumerate() {
            if m == 0 || m > self.n_modes {
                return Err(Error::InvalidIndex {
                    index: m,
                    n_modes: self.n_modes,
                });
            }
            if modes[..i].contains(&m) {
                return Err(Error::InvalidIndex {
                    index: m,
                    n_modes: self.n_modes,
                });
            }
        }
        let k = modes.len();
        let mut out = DMatrix::zeros(2 * k, 2 * k);
        for (i, &mi) in modes.iter().enumerate() {
            for (j, &mj) in modes.iter().enumerate() {
                for oi in 0..2 {
                    for oj in 0..2 {
                        out[(2 * i + oi, 2 * j + oj)] =
                            self.matrix[(2 * (mi - 1) + oi, 2 * (mj - 1) + oj)];
                    }
                }
            }
        }
        Ok(CovarianceMatrix {
            n_modes: k,
            matrix: out,
        })
    }

    /// S * sigma * S^T.
    pub fn apply_symplectic(&self, s: &SymplecticMatrix) -> Result<CovarianceMatrix> {
        if s.n_modes() != self.n_modes {
            return Err(Error::InvalidDimension(format!(
                "symplectic acts on {} modes but the state has {}",
                s.n_modes(),
                self.n_modes
            )));
        }
        Ok(CovarianceMatrix {
            n_modes: self.n_modes,
            matrix: s.matrix() * &self.matrix * s.matrix().transpose(),
        })
    }

    /// Symplectic congruence to the normal form diag(nu_k paired, descending).
    ///
    /// Operates on the symmetrized matrix. A matrix that is already diagonal
    /// with equal (x, p) pairs is handled by a mode permutation, so diagonal
    /// input in descending order yields W = identity exactly. Errors with a
    /// decomposition failure when sigma is not positive definite.
    pub fn williamson(&self) -> Result<WilliamsonDecomposition> {
        let n = self.n_modes;
        let sym = self.symmetrized_matrix();

        if let Some(nus) = diagonal_paired(&sym, n) {
            if nus.iter().any(|&nu| nu <= 0.0) {
                return Err(Error::Decomposition(
                    "covariance matrix is not positive definite".into(),
                ));
            }
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&i, &j| {
                nus[j]
                    .partial_cmp(&nus[i])
                    .expect("diagonal entries are finite")
                    .then(i.cmp(&j))
            });
            let mut w = DMatrix::zeros(2 * n, 2 * n);
            for (rank, &src) in order.iter().enumerate() {
                w[(2 * rank, 2 * src)] = 1.0;
                w[(2 * rank + 1, 2 * src + 1)] = 1.0;
            }
            return Ok(WilliamsonDecomposition {
                w: SymplecticMatrix::from_trusted(n, w),
                spectrum: order.iter().map(|&k| nus[k]).collect(),
            });
        }

        // General path: diagonalize A = sigma^(-1/2) * Omega * sigma^(-1/2),
        // an antisymmetric matrix with eigenvalues +/- i/nu_k.
        let eig = SymmetricEigen::new(sym);
        if eig.eigenvalues.min() <= 0.0 {
            return Err(Error::Decomposition(
                "covariance matrix is not positive definite".into(),
            ));
        }
        let vecs = &eig.eigenvectors;
        let sqrt_sigma =
            vecs * DMatrix::from_diagonal(&eig.eigenvalues.map(f64::sqrt)) * vecs.transpose();
        let inv_sqrt = vecs
            * DMatrix::from_diagonal(&eig.eigenvalues.map(|l| 1.0 / l.sqrt()))
            * vecs.transpose();
        let raw = &inv_sqrt * form_matrix(n) * &inv_sqrt;
        let a_mat = 0.5 * (&raw - raw.transpose());
        let g_raw = a_mat.transpose() * &a_mat;
        let g = 0.5 * (&g_raw + g_raw.transpose());

        // G = A^T A has eigenvalue 1/nu_k^2 twice per mode; pick one unit
        // vector u per plane and complete it with v = -nu * A u, which spans
        // the same plane and satisfies u^T A v = 1/nu.
        let geig = SymmetricEigen::new(g);
        let mut idx: Vec<usize> = (0..2 * n).collect();
        idx.sort_by(|&i, &j| {
            geig.eigenvalues[i]
                .partial_cmp(&geig.eigenvalues[j])
                .expect("eigenvalues are finite")
                .then(i.cmp(&j))
        });
        let mut cols: Vec<DVector<f64>> = Vec::with_capacity(2 * n);
        let mut nus: Vec<f64> = Vec::with_capacity(n);
        for &i in &idx {
            if nus.len() == n {
                break;
            }
            let mu = geig.eigenvalues[i];
            if mu <= 0.0 {
                return Err(Error::Decomposition(
                    "covariance matrix is numerically singular".into(),
                ));
            }
            let mut q = geig.eigenvectors.column(i).into_owned();
            orthogonalize(&mut q, &cols);
            orthogonalize(&mut q, &cols);
            let nq = q.norm();
            if nq < 1e-6 {
                continue;
            }
            q /= nq;
            let nu = 1.0 / mu.sqrt();
            let mut v = (&a_mat * &q) * (-nu);
            orthogonalize(&mut v, &cols);
            let proj = q.dot(&v);
            v.axpy(-proj, &q, 1.0);
            let nv = v.norm();
            if nv < 0.5 {
                return Err(Error::Decomposition(
                    "failed to pair eigenvectors into symplectic planes".into(),
                ));
            }
            v /= nv;
            cols.push(q);
            cols.push(v);
            nus.push(nu);
        }
        if nus.len() < n {
            return Err(Error::Decomposition(
                "eigenvector pairing did not span phase space".into(),
            ));
        }

        let k = DMatrix::from_columns(&cols);
        let scale = DMatrix::from_diagonal(&DVector::from_iterator(
            2 * n,
            nus.iter().flat_map(|&nu| {
                let s = 1.0 / nu.sqrt();
                [s, s]
            }),
        ));
        let s = sqrt_sigma * k * scale;
        let omega = form_matrix(n);
        let w = &omega * s.transpose() * omega.transpose();
        Ok(WilliamsonDecomposition {
            w: SymplecticMatrix::from_trusted(n, w),
            spectrum: nus,
        })
    }

    /// Normal form across the mode-1 | rest cut of a pure state.
    ///
    /// Returns a block-diagonal local symplectic (Williamson congruences of
    /// the two reductions, then a rotation pair canonicalizing the mode-1 x
    /// mode-2 cross block) with local_w * sigma * local_w^T equal to the
    /// two-mode squeezed pattern of [`make_schmidt_state`] padded by vacuum.
    pub fn schmidt_form(&self) -> Result<SchmidtForm> {
        let n = self.n_modes;
        if n < 2 {
            return Err(Error::InvalidDimension(
                "the mode-1 | rest split needs at least 2 modes".into(),
            ));
        }
        self.require_pure()?;

        let cm1 = self.reduce(&[1])?;
        let rest: Vec<usize> = (2..=n).collect();
        let cmr = self.reduce(&rest)?;
        let w1 = cm1.williamson()?.w;
        let wr = cmr.williamson()?.w;
        let local = direct_sum(&w1, &wr);
        let mut m = local.matrix() * self.symmetrized_matrix() * local.matrix().transpose();
        let mut total = local.into_matrix();

        let apply = |fix: DMatrix<f64>, m: &mut DMatrix<f64>, total: &mut DMatrix<f64>| {
            *m = &fix * &*m * fix.transpose();
            *total = &fix * &*total;
        };

        // Rotations on modes 1 and 2 diagonalize the cross block.
        let kb = Matrix2::new(m[(0, 2)], m[(0, 3)], m[(1, 2)], m[(1, 3)]);
        let (u, v) = rot_svd_angles(&kb);
        apply(
            two_block(n, &rotation2(u), &rotation2(-v)),
            &mut m,
            &mut total,
        );
        // Descending-magnitude order of the diagonalized cross block.
        if m[(0, 2)].abs() < m[(1, 3)].abs() {
            let quarter = rotation2(std::f64::consts::FRAC_PI_2);
            apply(two_block(n, &quarter, &quarter), &mut m, &mut total);
        }
        // Positive leading entry: diag(c, -c) with c >= 0.
        if m[(0, 2)] < 0.0 {
            let half = rotation2(std::f64::consts::PI);
            apply(embed_block(n, 1, &half), &mut m, &mut total);
        }

        let a = cm1.matrix().determinant().max(1.0).sqrt();
        let m = 0.5 * (&m + m.transpose());
        let canonical = make_schmidt_state(a, n)?;
        let deviation = (&m - canonical.matrix()).amax();
        if deviation > TOL_RECONSTRUCTION * m.amax().max(1.0) {
            return Err(Error::Decomposition(format!(
                "normal form deviates from the two-mode squeezed pattern by {deviation:.3e}"
            )));
        }
        Ok(SchmidtForm {
            local_w: SymplecticMatrix::from_trusted(n, total),
            schmidt_cm: CovarianceMatrix {
                n_modes: n,
                matrix: m,
            },
            a,
        })
    }
}

/// Some(per-mode diagonal values) when sigma is diagonal with equal (x, p)
/// pairs within tight tolerances; None sends the caller to the general path.
fn diagonal_paired(sym: &DMatrix<f64>, n_modes: usize) -> Option<Vec<f64>> {
    let scale = sym.amax().max(1.0);
    let d = 2 * n_modes;
    for i in 0..d {
        for j in 0..d {
            if i != j && sym[(i, j)].abs() > 1e-13 * scale {
                return None;
            }
        }
    }
    let mut nus = Vec::with_capacity(n_modes);
    for k in 0..n_modes {
        let x = sym[(2 * k, 2 * k)];
        let p = sym[(2 * k + 1, 2 * k + 1)];
        if (x - p).abs() > 1e-12 * scale {
            return None;
        }
        nus.push(0.5 * (x + p));
    }
    Some(nus)
}

/// The N-mode vacuum: identity covariance matrix.
pub fn vacuum(n_modes: usize) -> Result<CovarianceMatrix> {
    if n_modes == 0 {
        return Err(Error::InvalidDimension(
            "a state needs at least 1 mode".into(),
        ));
    }
    CovarianceMatrix::new(DMatrix::identity(2 * n_modes, 2 * n_modes))
}

/// Pure N-mode state whose mode-1 | rest entanglement is carried entirely by
/// a two-mode squeezed pair with parameter a >= 1: modes 1 and 2 have blocks
/// a*I, cross block diag(c, -c) with c = sqrt(a^2 - 1), remaining modes vacuum.
pub fn make_schmidt_state(a: f64, n_modes: usize) -> Result<CovarianceMatrix> {
    if !(a.is_finite() && a >= 1.0) {
        return Err(Error::InvalidParameter {
            name: "a",
            value: a,
            requirement: "must be finite and >= 1",
        });
    }
    if n_modes < 2 {
        return Err(Error::InvalidDimension(
            "a two-mode squeezed pattern needs at least 2 modes".into(),
        ));
    }
    let mut m = DMatrix::identity(2 * n_modes, 2 * n_modes);
    for i in 0..4 {
        m[(i, i)] = a;
    }
    let c = (a * a - 1.0).max(0.0).sqrt();
    m[(0, 2)] = c;
    m[(2, 0)] = c;
    m[(1, 3)] = -c;
    m[(3, 1)] = -c;
    CovarianceMatrix::new(m)
}

/// Two-mode squeezed state with squeezing parameter r >= 0 (a = cosh 2r).
pub fn make_two_mode_squeezed(r: f64) -> Result<CovarianceMatrix> {
    if !(r.is_finite() && r >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "r",
            value: r,
            requirement: "must be finite and >= 0",
        });
    }
    make_schmidt_state((2.0 * r).cosh(), 2)
}

/// Pure three-mode state, symmetric under exchange of modes 2 and 3, with
/// mean photon number n_bar >= 0 in mode 1 (so a = 4*n_bar + 1).
pub fn make_bisymmetric_three_mode(n_bar: f64) -> Result<CovarianceMatrix> {
    if !(n_bar.is_finite() && n_bar >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "n_bar",
            value: n_bar,
            requirement: "must be finite and >= 0",
        });
    }
    let a = 4.0 * n_bar + 1.0;
    let plus = 0.5 * (a + 1.0);
    let minus = 0.5 * (a - 1.0);
    let c = ((a * a - 1.0).max(0.0) / 2.0).sqrt();
    let mut m = DMatrix::zeros(6, 6);
    for i in 0..2 {
        m[(i, i)] = a;
        m[(2 + i, 2 + i)] = plus;
        m[(4 + i, 4 + i)] = plus;
        // modes 2 and 3 are classically correlated with each other
        m[(2 + i, 4 + i)] = minus;
        m[(4 + i, 2 + i)] = minus;
    }
    for col in [2, 4] {
        m[(0, col)] = c;
        m[(col, 0)] = c;
        m[(1, col + 1)] = -c;
        m[(col + 1, 1)] = -c;
    }
    CovarianceMatrix::new(m)
}

/// Seeded random symplectic built from rotation, squeezing, and beam-splitter
/// layers; deterministic for a given (n_modes, seed).
pub fn make_random_symplectic(n_modes: usize, seed: u64) -> Result<SymplecticMatrix> {
    if n_modes == 0 {
        return Err(Error::InvalidDimension(
            "a symplectic needs at least 1 mode".into(),
        ));
    }
    let tau = std::f64::consts::TAU;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = 2 * n_modes;
    let mut m = DMatrix::identity(d, d);
    let push = |e: DMatrix<f64>, m: &mut DMatrix<f64>| *m = e * &*m;
    for _ in 0..2 {
        for k in 0..n_modes {
            push(
                embed_block(n_modes, k, &rotation2(rng.random_range(0.0..tau))),
                &mut m,
            );
        }
        for k in 0..n_modes {
            let xi = rng.random_range(-0.8..0.8_f64).exp();
            push(
                embed_block(n_modes, k, &Matrix2::new(xi, 0.0, 0.0, 1.0 / xi)),
                &mut m,
            );
        }
        for k in 0..n_modes.saturating_sub(1) {
            push(
                beam_splitter(n_modes, k, rng.random_range(0.0..tau)),
                &mut m,
            );
        }
    }
    for k in 0..n_modes {
        push(
            embed_block(n_modes, k, &rotation2(rng.random_range(0.0..tau))),
            &mut m,
        );
    }
    Ok(SymplecticMatrix::from_trusted(n_modes, m))
}

/// Beam splitter mixing 0-based modes k and k+1 identically on x and p.
fn beam_splitter(n_modes: usize, k: usize, theta: f64) -> DMatrix<f64> {
    let (s, c) = theta.sin_cos();
    let mut m = DMatrix::identity(2 * n_modes, 2 * n_modes);
    for o in 0..2 {
        m[(2 * k + o, 2 * k + o)] = c;
        m[(2 * k + o, 2 * (k + 1) + o)] = s;
        m[(2 * (k + 1) + o, 2 * k + o)] = -s;
        m[(2 * (k + 1) + o, 2 * (k + 1) + o)] = c;
    }
    m
}

/// Seeded random pure state S * S^T (the vacuum pushed through a random
/// symplectic); deterministic for a given (n_modes, seed).
pub fn make_random_pure(n_modes: usize, seed: u64) -> Result<CovarianceMatrix> {
    let s = make_random_symplectic(n_modes, seed)?;
    let m = s.matrix() * s.matrix().transpose();
    CovarianceMatrix::new(0.5 * (&m + m.transpose()))
}
