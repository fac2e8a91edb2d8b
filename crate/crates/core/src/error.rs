use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid modulus {0}: expected an odd positive integer")]
    InvalidModulus(i64),

    #[error("{value} has no inverse modulo {modulus}")]
    NoInverse { value: i64, modulus: i64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("digit {digit} is outside the centered period of Z({base})")]
    InvalidDigit { digit: i64, base: i64 },

    #[error("factors {first} and {second} are not coprime")]
    NotCoprime { first: i64, second: i64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension {requested} exceeds the limit of {limit}")]
    Capacity { requested: u128, limit: usize },

    #[error("unsupported backend: {0}")]
    UnsupportedBackend(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn mismatch(expected: usize, found: usize) -> Self {
        Error::DimensionMismatch { expected, found }
    }

    /// True for errors caused by the file system or a malformed file, as opposed
    /// to bad parameters.
    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io(_) | Error::Csv(_) | Error::Format(_))
    }
}
