use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("symbol {0:?} is not in the alphabet")]
    UnknownSymbol(char),

    #[error("symbol index {0} is outside the alphabet")]
    SymbolOutOfRange(usize),

    #[error("pattern must not be empty")]
    EmptyPattern,

    #[error("window has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("mismatch index {index} outside 1..={m}")]
    MismatchIndexOutOfRange { index: usize, m: usize },

    #[error("index was built for a different pattern")]
    IndexMismatch,

    #[error("{algorithm} is not compatible with a {closure} closure")]
    IncompatibleClosure {
        algorithm: &'static str,
        closure: &'static str,
    },

    #[error("windows sharing representative {rep:?} disagree: {first} vs {second}")]
    CompatibilityViolation {
        rep: String,
        first: String,
        second: String,
    },

    #[error("no annotation for reachable representative {0:?}")]
    MissingAnnotation(String),

    #[error("probabilities for {what} sum to {sum}, expected 1")]
    Normalization { what: String, sum: f64 },

    #[error("negative probability {p} for {what}")]
    NegativeProbability { what: String, p: f64 },

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("alphabets differ: {0} vs {1}")]
    AlphabetMismatch(String, String),

    #[error("{what} needs {needed} units, guard allows {limit}")]
    GuardExceeded {
        what: &'static str,
        needed: u128,
        limit: u128,
    },

    #[error("malformed distribution document: {0}")]
    Format(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for errors raised by resource guards rather than bad input.
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::GuardExceeded { .. })
    }
}
