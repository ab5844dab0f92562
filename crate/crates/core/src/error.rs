use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the range an operation is defined on.
    #[error("{0}")]
    Domain(String),
    /// Malformed election data.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    /// A rule string that does not follow the rule grammar.
    #[error("invalid rule `{input}`: {reason}")]
    InvalidRule { input: String, reason: String },
    /// A score-based operation was asked for a rule that has no score.
    #[error("rule `{0}` is not score-based")]
    UnsupportedRule(String),
    /// A worst-case construction whose weights would be negative.
    #[error("construction not applicable: {0}")]
    ConstructionInapplicable(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
