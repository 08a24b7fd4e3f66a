use thiserror::Error;

/// Errors raised by input validation across the crate.
///
/// Mathematical verdicts (spectrum / not a spectrum) are never errors; they
/// are returned as values.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("alphabet size must be at least 2, got {0}")]
    BadBase(u64),

    #[error("digit {digit} is outside the alphabet of size {base}")]
    DigitOutOfRange { digit: u64, base: u64 },

    #[error("value {0} is not in the declared digit alphabet")]
    NotInAlphabet(i64),

    #[error("the period of an eventually periodic word must be nonempty")]
    EmptyPeriod,

    #[error("alphabet sizes differ ({0} vs {1})")]
    AlphabetMismatch(u64, u64),

    #[error("{divisor} is not invertible modulo {base}")]
    NotCoprime { divisor: i64, base: u64 },

    #[error("digit {0} is even; label digits must be odd")]
    EvenDigit(i64),

    #[error("digit {0} appears more than once")]
    DuplicateDigit(i64),

    #[error("digit set is empty")]
    EmptyDigitSet,

    #[error("{0} must be odd")]
    NotOdd(i64),

    #[error("position must be at least 1")]
    ZeroPosition,

    #[error("zero is not a valid argument here: {0}")]
    Zero(&'static str),

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid label: {0}")]
    Label(String),

    #[error("invalid parameter: {0}")]
    Param(String),

    #[error("set is not orthogonal: difference {1} - {0} lies outside the zero set")]
    NotOrthogonal(i64, i64),
}

pub type Result<T> = std::result::Result<T, Error>;
