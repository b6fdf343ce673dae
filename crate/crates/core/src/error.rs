use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("non-unit series")]
    NonUnitSeries,
    #[error("exp needs a series with zero constant term")]
    NonZeroConstant,
    #[error("log needs a series with constant term 1")]
    LogConstantNotOne,
    #[error("alpha must be positive")]
    NonPositiveAlpha,
    #[error("p out of range: p = {p} with weight {n}")]
    POutOfRange { p: i64, n: i64 },
    #[error("k out of range: {0}")]
    KOutOfRange(i64),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("no co-transition from the empty partition")]
    EmptyCotransition,
    #[error("need >= {0} generic elements")]
    AlphabetTooSmall(usize),
    #[error("evaluation matrix is singular")]
    SingularEvaluation,
    #[error("pole in B0: alphabet element equal to 1")]
    PoleInB0,
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("non-addable row {row} has nonzero coefficient {value}")]
    NonVanishingRow { row: usize, value: String },
    #[error("negative probability {value} at row {row}")]
    NegativeProbability { row: usize, value: String },
    #[error("unknown identity id {0:?}")]
    UnknownIdentity(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
