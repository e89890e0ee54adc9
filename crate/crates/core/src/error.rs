use thiserror::Error;

/// Errors raised by the algebra engine.
///
/// Every variant maps to exactly one stable error code (see [`Error::code`]),
/// which is what the command-line driver reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operands belong to different rings")]
    RingMismatch,

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("need at least {needed} variables, ring has {available}")]
    TooFewVariables { needed: usize, available: usize },

    #[error("an ideal needs at least one nonzero generator")]
    EmptyIdeal,

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("ideal is not cofinite (quotient ring is infinite-dimensional)")]
    NotCofinite,

    #[error("dimension {found} exceeds the supported bound {max}")]
    DimensionBound { max: usize, found: usize },

    #[error("ideal is not generated by monomials")]
    NotMonomial,

    #[error("ideal is not normal: power {failing_power} is not integrally closed")]
    NotNormal { failing_power: u32 },

    #[error("ideal is not integrally closed")]
    NotIntegrallyClosed,

    #[error("no reduction found after {attempts} samples")]
    ReductionNotFound { attempts: u32 },

    #[error("coefficient field too small: characteristic {characteristic} must exceed coefficient bound {bound}")]
    FieldTooSmall { characteristic: u64, bound: u64 },

    #[error("J is not contained in I")]
    NotContained,

    #[error("core depends on the chosen reduction: {0}")]
    IndependenceViolation(String),

    #[error("coefficient ideal fails I*a = J*a: {0}")]
    DefiningPropertyViolation(String),

    #[error("routes disagree: {0}")]
    RouteDisagreement(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable code for this error.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "E-DIM-MISMATCH",
            Error::RingMismatch => "E-RING-MISMATCH",
            Error::InvalidRing(_) => "E-INVALID-RING",
            Error::TooFewVariables { .. } => "E-TOO-FEW-VARS",
            Error::EmptyIdeal => "E-EMPTY-IDEAL",
            Error::OutOfRange(_) => "E-OUT-OF-RANGE",
            Error::NotCofinite => "E-NOT-COFINITE",
            Error::DimensionBound { .. } => "E-DIM-BOUND",
            Error::NotMonomial => "E-NOT-MONOMIAL",
            Error::NotNormal { .. } => "E-NOT-NORMAL",
            Error::NotIntegrallyClosed => "E-NOT-INTEGRALLY-CLOSED",
            Error::ReductionNotFound { .. } => "E-REDUCTION-NOT-FOUND",
            Error::FieldTooSmall { .. } => "E-FIELD-TOO-SMALL",
            Error::NotContained => "E-NOT-CONTAINED",
            Error::IndependenceViolation(_) => "E-INDEPENDENCE",
            Error::DefiningPropertyViolation(_) => "E-DEFINING-PROPERTY",
            Error::RouteDisagreement(_) => "E-ROUTE-DISAGREEMENT",
            Error::VerificationFailed(_) => "E-VERIFICATION",
            Error::Internal(_) => "E-INTERNAL",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
