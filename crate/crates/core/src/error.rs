use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("a vector needs at least one coordinate")]
    EmptyVector,

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("norm exponent must satisfy p >= 1, got {0}")]
    InvalidExponent(f64),

    #[error("norm weights must be finite and positive")]
    InvalidWeights,

    #[error("snowflake exponent must lie in (0, 1], got {0}")]
    InvalidSnowflake(f64),

    #[error("basis index {index} out of range for dimension {dim}")]
    BasisIndex { index: usize, dim: usize },

    #[error("curve has {params} parameters but {points} points")]
    CurveLengthMismatch { params: usize, points: usize },

    #[error("a curve needs at least one sample")]
    EmptyCurve,

    #[error("parameters must be strictly increasing (violated at index {0})")]
    NotIncreasing(usize),

    #[error("need at least {needed} samples, got {found}")]
    TooFewSamples { needed: usize, found: usize },

    #[error("curves do not meet: {0}")]
    JunctionMismatch(&'static str),

    #[error("invalid interval [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },

    #[error("speed {speed} at sample {index} is below the floor {floor}")]
    SpeedBelowFloor {
        index: usize,
        speed: f64,
        floor: f64,
    },

    #[error("invalid Hölder order {0}")]
    InvalidOrder(f64),

    #[error("invalid Lipschitz constant {0}")]
    InvalidConstant(f64),

    #[error("orders differ: {0} vs {1}")]
    OrderMismatch(f64, f64),

    #[error("operation needs a second bound")]
    MissingOperand,

    #[error("product rule needs finite sup bounds of both factors")]
    MissingSupBound,

    #[error("scale list is empty")]
    EmptyScales,

    #[error("Koch level {0} exceeds the maximum of 12")]
    LevelTooLarge(u32),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
