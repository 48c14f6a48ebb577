use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("level {0} is not an odd prime >= 5")]
    InvalidLevel(u64),
    #[error("root exponent {t} is not a unit modulo {modulus}")]
    InvalidRootExponent { t: i64, modulus: u64 },
    #[error("invalid color {color} at level {p}: {reason}")]
    InvalidColor { color: u32, p: u32, reason: &'static str },
    #[error("malformed graph: {0}")]
    MalformedGraph(String),
    #[error("zero has no multiplicative inverse")]
    DivisionByZero,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime {q} is ramified at level {p}")]
    Ramified { q: u64, p: u32 },
    #[error("prime {q} is excluded: {reason}")]
    BadPrime { q: u64, reason: String },
    #[error("denominator of entry {entry} is divisible by {q}")]
    DenominatorNotCoprime { q: u64, entry: String },
    #[error("modulus index {index} out of range ({count} factors)")]
    ModulusIndex { index: usize, count: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("illegal move: {0}")]
    IllegalMove(String),
    #[error("verlinde rounding guard violated: value {value} is {distance:e} from an integer")]
    RoundingGuard { value: String, distance: f64 },
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse { offset, message: message.into() }
    }
}
