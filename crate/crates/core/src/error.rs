use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("rank {0} is outside the supported range 1..=64")]
    BadRank(usize),

    #[error("malformed element {text:?}: {reason}")]
    Parse { text: String, reason: String },

    #[error("element {0} does not belong to W(D_n)")]
    NotInGroup(String),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("inconsistent representation: {0}")]
    Representation(String),

    #[error("no matching case: {0}")]
    NoMatchingCase(String),

    #[error("unknown suite {0:?}")]
    UnknownSuite(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
