use thiserror::Error;

/// Errors for Bell-operator construction and the numerics underneath.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("direction is not unit length (norm = {0})")]
    NotUnit(f64),

    #[error("zero vector cannot be normalized")]
    ZeroVector,

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("matrix is not Hermitian (max asymmetry {0:.3e})")]
    NotHermitian(f64),

    #[error("expected {expected} particles, got {got}")]
    ParticleCount { expected: usize, got: usize },

    #[error("particle count {0} outside supported range {1}..={2}")]
    ParticleRange(usize, usize, usize),

    #[error("sign factors must have product -1")]
    InvalidSignFactors,

    #[error("sign value {0} is not +1 or -1")]
    InvalidSign(i8),

    #[error("pairing list has {got} entries for {expected} particles")]
    InvalidPairing { expected: usize, got: usize },

    #[error("state is not normalized (norm = {0})")]
    NotNormalized(f64),

    #[error("coefficients violate alpha^2 + beta^2 = 1 (got {0})")]
    CoefficientNormalization(f64),

    #[error("duplicate pattern pair in superposition: {0}")]
    DuplicatePair(String),

    #[error("perpendicular axis undefined: measurement directions are parallel")]
    UndefinedPerpAxis,

    #[error("eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("enumeration too large: {0} particles exceeds limit {1}")]
    EnumerationTooLarge(usize, usize),

    #[error("no sign assignment makes the requested pattern a maximal eigenvector ({0})")]
    NoAdaptedSigns(String),

    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
