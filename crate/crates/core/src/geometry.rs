//! Distance geometry on the orbit of traceless single-mode operations.
//!
//! For a pure state sigma the figure of merit is D = min over feasible
//! (alpha, beta) of 1 - F(sigma, S~ sigma S~^T), where S~ embeds a traceless
//! single-mode symplectic on the chosen mode. For a state in two-mode
//! squeezed normal form with parameter a the minimum is (a^2-1)/(a^2+1),
//! attained at (alpha, beta) = (0, 1).

use nalgebra::{DMatrix, Matrix2};

use crate::error::{Error, Result};
use crate::states::{make_schmidt_state, CovarianceMatrix};
use crate::symplectic::{embed_block, make_single_mode_op, mode_swap, SingleModeOp};
use crate::tolerances::{FIDELITY_DET_SLACK, TOL_REFINE};

/// Hard cap on kernel evaluations during refinement.
const MAX_REFINE_EVALS: usize = 200_000;

/// Uhlmann fidelity of two pure Gaussian states: 2^N / sqrt(det(sa + sb)).
///
/// The determinant is clamped from below at its theoretical floor 4^N (up to
/// a relative slack) and the result capped at 1, so roundoff never reports a
/// fidelity above 1.
pub fn fidelity_pure(a: &CovarianceMatrix, b: &CovarianceMatrix) -> Result<f64> {
    if a.n_modes() != b.n_modes() {
        return Err(Error::InvalidDimension(format!(
            "fidelity needs equal mode counts, got {} and {}",
            a.n_modes(),
            b.n_modes()
        )));
    }
    a.require_pure()?;
    b.require_pure()?;
    let sum = a.matrix() + b.matrix();
    Ok(fidelity_from_sum(&sum, a.n_modes()))
}

fn fidelity_from_sum(sum: &DMatrix<f64>, n_modes: usize) -> f64 {
    let pow4 = 4.0_f64.powi(n_modes as i32);
    let det = sum.determinant().max((1.0 - FIDELITY_DET_SLACK) * pow4);
    (2.0_f64.powi(n_modes as i32) / det.sqrt()).min(1.0)
}

/// Evaluates 1 - F(sigma, S~ sigma S~^T) for the traceless operation
/// realized by (alpha, beta) on mode 1 (gamma >= 0 branch).
pub fn distance_functional(cm: &CovarianceMatrix, alpha: f64, beta: f64) -> Result<f64> {
    cm.require_pure()?;
    let op = make_single_mode_op(alpha, beta)?;
    let kernel = Kernel::new(cm);
    Ok(kernel.eval(op.alpha(), op.beta(), op.gamma()))
}

/// Both sides of the closed-form determinant identity
/// det(sigma_W + S~ sigma_W S~^T) = 4^(N-1) * ((a^2-1)^2 + 4 a^2 beta^2)
/// for the two-mode squeezed pattern with parameter a on N modes.
#[derive(Clone, Copy, Debug)]
pub struct DeterminantComparison {
    /// Determinant evaluated from the assembled matrices.
    pub direct: f64,
    /// The closed-form right-hand side.
    pub closed_form: f64,
}

/// Evaluates the determinant identity at (a, beta).
///
/// The determinant depends on the operation only through beta, so the direct
/// side is computed at the representative (alpha, gamma) = (0, sqrt(beta^2-1)).
pub fn determinant_identity(a: f64, beta: f64, n_modes: usize) -> Result<DeterminantComparison> {
    if !(a.is_finite() && a >= 1.0) {
        return Err(Error::InvalidParameter {
            name: "a",
            value: a,
            requirement: "must be finite and >= 1",
        });
    }
    if !(beta.is_finite() && beta >= 1.0) {
        return Err(Error::InvalidParameter {
            name: "beta",
            value: beta,
            requirement: "must be finite and >= 1",
        });
    }
    if n_modes < 2 {
        return Err(Error::InvalidDimension(
            "the identity is stated for N >= 2 modes".into(),
        ));
    }
    let cm = make_schmidt_state(a, n_modes)?;
    let op = make_single_mode_op(0.0, beta)?;
    let s = embed_block(n_modes, 0, &op.matrix());
    let image = &s * cm.matrix() * s.transpose();
    let direct = (cm.matrix() + image).determinant();
    let a2 = a * a;
    let closed_form =
        4.0_f64.powi(n_modes as i32 - 1) * ((a2 - 1.0).powi(2) + 4.0 * a2 * beta * beta);
    Ok(DeterminantComparison {
        direct,
        closed_form,
    })
}

/// Minimum of the orbit distance for a state in normal form with parameter a:
/// (a^2 - 1) / (a^2 + 1).
pub fn closed_form_distance(a: f64) -> Result<f64> {
    if !(a.is_finite() && a >= 1.0) {
        return Err(Error::InvalidParameter {
            name: "a",
            value: a,
            requirement: "must be finite and >= 1",
        });
    }
    let a2 = a * a;
    Ok((a2 - 1.0) / (a2 + 1.0))
}

/// The operation attaining the closed-form minimum: (alpha, beta) = (0, 1),
/// whose realized matrix is the quarter rotation [[0, 1], [-1, 0]].
pub fn extremal_op() -> SingleModeOp {
    make_single_mode_op(0.0, 1.0).expect("(0, 1) satisfies the constraint")
}

/// Whether the extremal operation on the 1-based mode leaves the state
/// invariant entrywise within `tolerance`.
pub fn is_product_across_cut(
    cm: &CovarianceMatrix,
    mode_index: usize,
    tolerance: f64,
) -> Result<bool> {
    if mode_index == 0 || mode_index > cm.n_modes() {
        return Err(Error::InvalidIndex {
            index: mode_index,
            n_modes: cm.n_modes(),
        });
    }
    let s = embed_block(cm.n_modes(), mode_index - 1, &extremal_op().matrix());
    let image = &s * cm.matrix() * s.transpose();
    Ok((image - cm.matrix()).amax() <= tolerance)
}

/// Outcome of the numerical orbit-distance minimization.
#[derive(Clone, Copy, Debug)]
pub struct DistanceResult {
    /// Minimum of 1 - F over the feasible set.
    pub d_min: f64,
    /// alpha at the minimizer.
    pub argmin_alpha: f64,
    /// beta at the minimizer.
    pub argmin_beta: f64,
    /// Signed gamma at the minimizer; both signs realize the same beta.
    pub argmin_gamma: f64,
    /// (a^2 - 1) / (a^2 + 1) with a = sqrt(det sigma_1) of the chosen mode.
    pub closed_form_d: f64,
    /// |d_min - closed_form_d|.
    pub residual: f64,
}

/// Search controls for [`minimize_distance_with`].
#[derive(Clone, Copy, Debug)]
pub struct MinimizeOptions {
    /// Points per axis of the coarse grid.
    pub grid: usize,
    /// Refinement stops once both step sizes shrink below this.
    pub refine_tol: f64,
    /// alpha is scanned over [-alpha_span, alpha_span].
    pub alpha_span: f64,
    /// beta = sqrt(alpha^2 + 1) * cosh(t) with t scanned over [0, t_span].
    pub t_span: f64,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        Self {
            grid: 101,
            refine_tol: TOL_REFINE,
            alpha_span: 5.0,
            t_span: 3.0,
        }
    }
}

struct Kernel<'a> {
    sigma: &'a DMatrix<f64>,
    n_modes: usize,
    pow2: f64,
    det_floor: f64,
}

impl<'a> Kernel<'a> {
    fn new(cm: &'a CovarianceMatrix) -> Self {
        let n = cm.n_modes();
        let pow4 = 4.0_f64.powi(n as i32);
        Self {
            sigma: cm.matrix(),
            n_modes: n,
            pow2: 2.0_f64.powi(n as i32),
            det_floor: (1.0 - FIDELITY_DET_SLACK) * pow4,
        }
    }

    /// 1 - F(sigma, S~ sigma S~^T) with the signed-gamma realization on mode 1.
    fn eval(&self, alpha: f64, beta: f64, gamma: f64) -> f64 {
        let block = Matrix2::new(gamma, alpha + beta, alpha - beta, -gamma);
        let s = embed_block(self.n_modes, 0, &block);
        let image = &s * self.sigma * s.transpose();
        let sum = self.sigma + image;
        let det = sum.determinant().max(self.det_floor);
        1.0 - (self.pow2 / det.sqrt()).min(1.0)
    }

    fn eval_at(&self, alpha: f64, t: f64, sign: f64) -> f64 {
        let h = alpha.hypot(1.0);
        let beta = h * t.cosh();
        let gamma = sign * ((beta - h) * (beta + h)).max(0.0).sqrt();
        self.eval(alpha, beta, gamma)
    }
}

/// Minimizes 1 - F over the full feasible set with default options.
pub fn minimize_distance(cm: &CovarianceMatrix, mode_index: usize) -> Result<DistanceResult> {
    minimize_distance_with(cm, mode_index, &MinimizeOptions::default())
}

/// Minimizes 1 - F(sigma, S~ sigma S~^T) over traceless single-mode
/// operations on the 1-based mode.
///
/// The feasible set is parameterized as alpha in [-alpha_span, alpha_span],
/// beta = sqrt(alpha^2 + 1) * cosh(t) with t >= 0 (every such point is
/// feasible), and both signs of gamma = +/- sqrt(beta^2 - alpha^2 - 1), which
/// realize distinct operations with equal beta. A coarse grid, with ties
/// broken toward (alpha, beta) = (0, 1), seeds a coordinate descent whose
/// steps halve when no neighbor improves.
pub fn minimize_distance_with(
    cm: &CovarianceMatrix,
    mode_index: usize,
    options: &MinimizeOptions,
) -> Result<DistanceResult> {
    let n = cm.n_modes();
    if n < 2 {
        return Err(Error::InvalidDimension(
            "the mode | rest split needs at least 2 modes".into(),
        ));
    }
    if mode_index == 0 || mode_index > n {
        return Err(Error::InvalidIndex {
            index: mode_index,
            n_modes: n,
        });
    }
    if options.grid < 2 {
        return Err(Error::InvalidParameter {
            name: "grid",
            value: options.grid as f64,
            requirement: "must be at least 2",
        });
    }
    if !(options.refine_tol.is_finite() && options.refine_tol > 0.0) {
        return Err(Error::InvalidParameter {
            name: "refine_tol",
            value: options.refine_tol,
            requirement: "must be finite and > 0",
        });
    }
    cm.require_pure()?;

    // Relabel so the chosen mode sits first; a mode swap is a permutation,
    // so the minimum value is unchanged.
    let working;
    let cm = if mode_index == 1 {
        cm
    } else {
        let p = mode_swap(n, 1, mode_index)?;
        working = cm.apply_symplectic(&p)?;
        &working
    };

    let a = cm.reduce(&[1])?.matrix().determinant().max(1.0).sqrt();
    let closed_form_d = closed_form_distance(a)?;

    let kernel = Kernel::new(cm);
    let g = options.grid;
    let steps = (g - 1) as f64;

    // Coarse grid over both gamma sheets. Among numerically tied minima the
    // point closest to (alpha, beta) = (0, 1) wins.
    let mut best_f = f64::INFINITY;
    let mut best = (0.0_f64, 0.0_f64, 1.0_f64, f64::INFINITY); // alpha, t, sign, dist2
    for sign in [1.0_f64, -1.0] {
        for i in 0..g {
            let alpha = -options.alpha_span + 2.0 * options.alpha_span * i as f64 / steps;
            for j in 0..g {
                let t = options.t_span * j as f64 / steps;
                let beta = alpha.hypot(1.0) * t.cosh();
                let v = kernel.eval_at(alpha, t, sign);
                let d2 = alpha * alpha + (beta - 1.0) * (beta - 1.0);
                if v < best_f - 1e-10 {
                    best_f = v;
                    best = (alpha, t, sign, d2);
                } else if v <= best_f + 1e-10 && d2 < best.3 {
                    best_f = best_f.min(v);
                    best = (alpha, t, sign, d2);
                }
            }
        }
    }

    // Coordinate descent on the winning sheet; the landscape has a single
    // basin, so halving steps on failure converges to the minimizer.
    let (mut alpha, mut t, sign, _) = best;
    let mut fv = best_f;
    let mut step_a = 2.0 * options.alpha_span / steps;
    let mut step_t = options.t_span / steps;
    let mut evals = 0_usize;
    while (step_a > options.refine_tol || step_t > options.refine_tol) && evals < MAX_REFINE_EVALS {
        let candidates = [
            (alpha + step_a, t),
            (alpha - step_a, t),
            (alpha, t + step_t),
            (alpha, (t - step_t).max(0.0)),
        ];
        let mut improved = false;
        let (mut ca, mut ct, mut cv) = (alpha, t, fv);
        for &(na, nt) in &candidates {
            let v = kernel.eval_at(na, nt, sign);
            evals += 1;
            if v < cv {
                ca = na;
                ct = nt;
                cv = v;
                improved = true;
            }
        }
        if improved {
            alpha = ca;
            t = ct;
            fv = cv;
        } else {
            step_a *= 0.5;
            step_t *= 0.5;
        }
    }

    let h = alpha.hypot(1.0);
    let beta = h * t.cosh();
    let gamma = sign * ((beta - h) * (beta + h)).max(0.0).sqrt();
    Ok(DistanceResult {
        d_min: fv,
        argmin_alpha: alpha,
        argmin_beta: beta,
        argmin_gamma: gamma,
        closed_form_d,
        residual: (fv - closed_form_d).abs(),
    })
}
