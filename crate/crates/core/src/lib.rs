//! Phase-space toolkit for pure Gaussian states of N bosonic modes.
//!
//! # Conventions
//!
//! Quadratures are ordered xpxp: (x1, p1, ..., xN, pN). Covariance matrices
//! are normalized so the **vacuum is the identity**; a matrix is physical
//! (bona fide) when sigma + i*Omega >= 0, every symplectic eigenvalue is
//! then >= 1, and the state is pure exactly when all of them equal 1.
//! The symplectic form is Omega = diag(omega, ..., omega) with
//! omega = [[0, 1], [-1, 0]].
//!
//! # What this crate does
//!
//! * symplectic linear algebra: forms, validated symplectic matrices, the
//!   traceless single-mode family [[gamma, alpha+beta], [alpha-beta, -gamma]]
//!   with gamma^2 = beta^2 - alpha^2 - 1, and its Euler factorization;
//! * covariance matrices: validity checks, symplectic spectra, Williamson
//!   normal form, the two-mode squeezed normal form across the 1 | rest cut,
//!   reductions, and state factories;
//! * geometry: pure-state fidelity, the orbit-distance functional
//!   1 - F(sigma, S~ sigma S~^T), its closed-form minimum
//!   (a^2 - 1) / (a^2 + 1), and a numerical minimizer over the full
//!   feasible set that cross-checks the closed form;
//! * measures: linear entropy, Gaussian tangle, and von Neumann entropy as
//!   closed forms in a = sqrt(det sigma_1), plus a combined report;
//! * a plain-text state-file format.
//!
//! # Example
//!
//! ```
//! use cvgeom::{make_two_mode_squeezed, minimize_distance};
//!
//! let cm = make_two_mode_squeezed(1.0).unwrap();
//! let result = minimize_distance(&cm, 1).unwrap();
//! // the minimum matches (a^2 - 1) / (a^2 + 1) with a = cosh(2r)
//! assert!(result.residual < 1e-6);
//! assert!(result.argmin_alpha.abs() < 1e-4);
//! assert!((result.argmin_beta - 1.0).abs() < 1e-4);
//! ```

pub mod error;
pub mod geometry;
pub mod measures;
pub mod statefile;
pub mod states;
pub mod symplectic;
pub mod tolerances;

pub use error::{Error, Result};
pub use geometry::{
    closed_form_distance, determinant_identity, distance_functional, extremal_op, fidelity_pure,
    is_product_across_cut, minimize_distance, minimize_distance_with, DeterminantComparison,
    DistanceResult, MinimizeOptions,
};
pub use measures::{
    gaussian_tangle, linear_entropy, measure_report, von_neumann_entropy,
    von_neumann_entropy_with_base, MeasureReport,
};
pub use statefile::{parse_state, write_state};
pub use states::{
    make_bisymmetric_three_mode, make_random_pure, make_random_symplectic, make_schmidt_state,
    make_two_mode_squeezed, vacuum, CovarianceMatrix, SchmidtForm, ValidityReport,
    WilliamsonDecomposition,
};
pub use symplectic::{
    direct_sum, embed_on_mode, euler_compose, is_symplectic, make_single_mode_op,
    make_symplectic_form, single_mode_op_to_euler, symplectic_residual, EulerAngles,
    GeneratorBasis, SingleModeOp, SymplecticForm, SymplecticMatrix,
};
