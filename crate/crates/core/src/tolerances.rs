//! Central numerical tolerances.
//!
//! Every comparison against roundoff noise goes through one of these
//! constants so the accepted error budget is visible in a single place.

/// Max-norm residual allowed in S*Omega*S^T - Omega for a symplectic matrix.
pub const TOL_SYM: f64 = 1e-10;

/// Entrywise asymmetry allowed in a covariance matrix.
pub const TOL_SYMMETRY: f64 = 1e-12;

/// Allowed deviation |nu - 1| of symplectic eigenvalues for purity.
pub const TOL_PURITY: f64 = 1e-9;

/// Lower bound accepted for eigenvalues of sigma + i*Omega (roundoff slack).
pub const TOL_BONA_FIDE: f64 = -1e-10;

/// Max-norm residual allowed when reconstructing a state from a decomposition.
pub const TOL_RECONSTRUCTION: f64 = 1e-8;

/// Relative slack in the clamp floor applied to det(sigma + sigma') so that
/// fidelity between pure states never exceeds 1 by roundoff.
pub const FIDELITY_DET_SLACK: f64 = 1e-12;

/// Step floor at which minimizer refinement stops.
pub const TOL_REFINE: f64 = 1e-8;

/// Largest |d_min - closed_form_d| the CLI accepts as agreement.
pub const TOL_RESIDUAL_CLI: f64 = 1e-5;
