use thiserror::Error;

/// Errors produced by the election model, the control engine and the corpus
/// reader.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A candidate name that is not part of the relevant candidate universe.
    #[error("unknown candidate `{0}`")]
    UnknownCandidate(String),

    /// The vote kind of a profile does not fit the voting rule.
    #[error("{rule} elections need {expected} votes")]
    VoteKind { rule: &'static str, expected: &'static str },

    /// Structurally invalid input, such as an overlapping partition.
    #[error("invalid input: {0}")]
    Domain(String),

    /// The caller combined things that do not fit together, e.g. a control
    /// type with an instance of another compatibility class.
    #[error("usage error: {0}")]
    Usage(String),

    /// Input exceeds an enumeration guard.
    #[error("instance too large: {0}")]
    TooLarge(String),

    /// A file could not be read or written.
    #[error("{path}: {message}")]
    Io { path: String, message: String },

    /// Malformed election file.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub fn io(path: &std::path::Path, err: std::io::Error) -> Self {
        Error::Io {
            path: path.display().to_string(),
            message: err.to_string(),
        }
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}
