//! Numerical tolerances used across the crate.
//!
//! Double precision carries ~15.9 significant digits and every matrix here
//! has dimension at most 2^12 with entries bounded by 4, so exact algebraic
//! identities hold to ~1e-14 and the tolerances below leave two to four
//! digits of headroom.

/// Hermiticity check: `|a[i][j] - conj(a[j][i])|` relative to the largest entry.
pub const TAU_HERM: f64 = 1e-12;

/// Unit-vector check for measurement directions.
pub const TAU_UNIT: f64 = 1e-12;

/// State normalization check.
pub const TAU_NORM: f64 = 1e-12;

/// Eigensolver residual per eigenpair, relative to `dim * max|entry|`.
pub const TAU_EIG: f64 = 1e-10;

/// Entrywise tolerance for dense matrix products, per unit of dimension.
pub const TAU_MATMUL_PER_DIM: f64 = 1e-10;

/// Cross-checks between closed-form expressions and dense numerics.
pub const TAU_XCHECK: f64 = 1e-8;

/// Exact trigonometric identities evaluated both ways.
pub const TAU_IDENTITY: f64 = 1e-12;
