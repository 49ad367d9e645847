use thiserror::Error;

/// Everything that can go wrong across the crate.
///
/// Domain errors carry the offending value rendered as decimal so they stay
/// readable for arbitrarily large inputs.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("generator a must be at least {min}, got {got}")]
    GeneratorTooSmall { min: u32, got: String },

    #[error("gap 2 requires odd a, got {0}")]
    EvenGenerator(String),

    #[error("j must satisfy 1 <= j < a, got j = {j} for a = {a}")]
    OffsetOutOfRange { a: String, j: String },

    #[error("half-floor identity needs a positive floor, got 0")]
    ZeroFloor,

    #[error("argument must be at least {min}, got {got}")]
    ArgumentTooSmall { min: u32, got: String },

    #[error("argument must be odd, got {0}")]
    EvenArgument(String),

    #[error("unsupported discriminant d = {0} (only 2 and 3 are supported)")]
    UnsupportedDiscriminant(u32),

    #[error("right-hand side must be nonzero with |rhs| <= 64, got {0}")]
    RhsOutOfRange(String),

    #[error("rickert bound needs nonzero inputs")]
    ZeroRickertInput,

    #[error("{0} does not satisfy the hypotheses of {1}")]
    Hypothesis(String, &'static str),

    #[error("every square below the Frobenius number is representable")]
    NoUnrepresentableSquare,

    #[error("starting value already exceeds twice the cap")]
    CoefficientExceedsCap,

    #[error("value {0} does not fit the supported range")]
    TooLarge(String),
}

pub type Result<T> = std::result::Result<T, Error>;
