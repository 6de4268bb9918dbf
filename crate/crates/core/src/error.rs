use thiserror::Error;

/// Errors raised by the algebra, code-construction and analysis layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("modulus {modulus:#x} is reducible (factor {factor:#x})")]
    ReducibleModulus { modulus: u32, factor: u32 },
    #[error("value {value} is not an element of a field of size {q}")]
    InvalidElement { value: u32, q: usize },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid self-dual basis: {0}")]
    InvalidBasis(String),
    #[error("gcd({n}, {q}) != 1")]
    NotCoprime { n: usize, q: usize },
    #[error("splitting field too large: degree {0} over GF(2)")]
    SplittingFieldTooLarge(u32),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("generator does not divide x^{n} - 1")]
    NotADivisor { n: usize },
    #[error("code is not dual-containing")]
    NotDualContaining,
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("syndromes differ")]
    SyndromeMismatch,
    #[error("enumeration of {size} items exceeds the limit {limit}")]
    TooLarge { size: u128, limit: u128 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
