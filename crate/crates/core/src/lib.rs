//! Hardy-type Bell operators for N spin-1/2 particles.
//!
//! The Hardy inequality bounds a four-term combination of N-particle spin
//! correlation functions by `-2 <= <B> <= 2` under local realism, for any
//! particle count. Quantum mechanics pushes the bound to `|<B>| <= 4`, a
//! violation by a factor of 2 (the two-particle CHSH inequality only reaches
//! a factor of sqrt(2)), and the states that saturate it are superpositions
//! of maximally entangled GHZ-type states.
//!
//! This crate constructs the Bell operators, computes and classifies their
//! spectra, builds the saturating eigenstates, evaluates the correlation
//! function both in closed form and by direct operator expectation, and
//! verifies the classical bound by exhaustive enumeration of deterministic
//! local models.
//!
//! Everything is plain dense complex linear algebra over `f64`, with a
//! self-contained Jacobi eigensolver; no BLAS/LAPACK dependency. All values
//! are immutable after construction and every operation is a pure function,
//! so the whole API is safe to use from multiple threads.

pub mod bell;
pub mod correlation;
pub mod eigh;
mod error;
pub mod linalg;
pub mod states;
pub mod tol;
pub mod verify;

pub use bell::{
    bell3_squared_closed_form, bell3_squared_closed_form_directions, bsq_eigenvalue_for_pattern,
    build_bell3, build_bell3_directions, build_bellN, classify_eigenspace, largest_eig_formula,
    largest_eig_sq_formula, maximal_pattern, BellRow, BellSpec, DegeneracyClass, DirectionSettings,
    MaximalPattern, MeasurementSettings, PairingPattern, Sign, SignPattern, SpectralEntry,
    SpectralReport,
};
pub use correlation::{
    bell_expectation_closed3, bell_expectation_closedN, correlation_closed, correlation_direct,
    product_correlation, starred_cos_identity, CorrelationQuery,
};
pub use eigh::{eigh, Eigh};
pub use error::{Error, Result};
pub use linalg::{
    commutator, expectation, pauli_direction, pauli_planar, tensor, CMatrix, CVector, Complex64,
    Direction, PlanarAngle,
};
pub use states::{
    check_max_violation_form, general_eigenvector, ghz_state, product_state, superpose_max,
    GhzFamilyState, MaxViolationReport, PairRecord, ProductState, PureState, QubitState,
};
pub use verify::{
    eq9_extremum_check, ghz_theorem_check, lhv_max, optimize_violation, spectral_crosscheck,
    GhzOperatorSet, LhvAssignment, OptimizeOutcome, VerificationReport,
};
