use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("element is trivial; k undefined")]
    TrivialElement,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("order exceeds cap {cap}")]
    OrderExceedsCap { cap: usize },

    #[error("state cap {cap} exceeded while enumerating")]
    StateCapExceeded { cap: usize },

    #[error("undetected below bound {bound}")]
    UndetectedBelowBound { bound: u64 },

    #[error("search exhausted below bound {bound} without a detecting quotient")]
    Exhausted { bound: u64 },

    #[error("generator index {index} out of range (have {available})")]
    IndexOutOfRange { index: usize, available: usize },

    #[error("witness verification failed: {0}")]
    Verification(String),

    #[error("unknown group `{0}`")]
    UnknownGroup(String),

    #[error("method `{method}` is not available for group `{group}`")]
    UnsupportedMethod { group: String, method: String },

    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
