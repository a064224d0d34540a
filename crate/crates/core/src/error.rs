use thiserror::Error;

/// Errors raised by the library.
///
/// Variants fall into two classes: domain errors caused by bad input, and
/// internal violations that indicate a bug (or a gap in the underlying
/// mathematics) and must never be swallowed. See [`Error::is_internal`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial is not homogeneous")]
    NonHomogeneous,
    #[error("zero polynomial has no divisibility order")]
    ZeroPolynomial,
    #[error("linear system is singular (no pivot in column {column})")]
    SingularSystem { column: usize },
    #[error("malformed linear system: {0}")]
    MalformedSystem(String),
    #[error("generators {generators:?} do not generate a cofinite monoid (gcd {gcd})")]
    NotCofinite { generators: Vec<u32>, gcd: u32 },
    #[error("staircase has an infinite complement")]
    InfiniteComplement,
    #[error("empty generator list")]
    EmptyGenerators,
    #[error("generators must be positive")]
    ZeroGenerator,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("staircases live over different ambient monoids")]
    AmbientMismatch,
    #[error("the simple criterion for products needs at least two factors (got {factors})")]
    SimpleRequiresTwoFactors { factors: usize },
    #[error("construction of h_{m} failed: {reason}")]
    ConstructionFailed { m: usize, reason: String },
    #[error("criterion mismatch: {0}")]
    CriterionMismatch(String),
    #[error("cluster identity violated: {0}")]
    IdentityViolation(String),
}

impl Error {
    /// True for assertion-class failures: results that contradict a proven
    /// statement and therefore point at a defect rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::ConstructionFailed { .. }
                | Error::CriterionMismatch(_)
                | Error::IdentityViolation(_)
                | Error::SingularSystem { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
