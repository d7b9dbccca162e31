//! Error taxonomy shared by every module.

use thiserror::Error;

/// Failure modes of construction, validation, decomposition, and state-file I/O.
#[derive(Debug, Error)]
pub enum Error {
    /// Matrix shape or mode count is unusable (odd, non-square, or empty).
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    /// 1-based mode index outside the state's mode range.
    #[error("mode index {index} out of range for {n_modes} modes")]
    InvalidIndex { index: usize, n_modes: usize },

    /// Scalar parameter outside its documented domain.
    #[error("parameter {name} = {value} violates: {requirement}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },

    /// Squeezing factors must be strictly positive.
    #[error("squeezing factor xi = {xi} must be finite and > 0")]
    InvalidSqueezing { xi: f64 },

    /// The traceless single-mode family requires beta >= sqrt(alpha^2 + 1).
    #[error("(alpha, beta) = ({alpha}, {beta}) violates beta >= sqrt(alpha^2 + 1)")]
    ConstraintViolation { alpha: f64, beta: f64 },

    /// Congruence with the symplectic form is broken beyond tolerance.
    #[error("matrix is not symplectic: residual {residual:.3e}")]
    NotSymplectic { residual: f64 },

    /// The uncertainty relation sigma + i*Omega >= 0 fails.
    #[error(
        "not a bona fide covariance matrix: min eigenvalue of sigma + i*Omega is {min_eigenvalue:.3e}"
    )]
    NotBonaFide { min_eigenvalue: f64 },

    /// A pure state was required; symplectic eigenvalues deviate from 1.
    #[error("state is not pure: max |nu - 1| = {max_deviation:.3e}")]
    NotPure { max_deviation: f64 },

    /// A matrix decomposition could not be completed.
    #[error("decomposition failed: {0}")]
    Decomposition(String),

    /// State-file parse failure, naming the offending field.
    #[error("state file field '{field}': {reason}")]
    Parse { field: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
