use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph too small: {0}")]
    GraphTooSmall(String),

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("colored and uncolored graphs cannot be mixed")]
    MixedColoring,

    #[error("order {n} exceeds the enumeration limit {limit}")]
    OrderLimit { n: usize, limit: usize },

    #[error("Kelly inapplicable: pattern has {pattern} vertices, deck order is {order}")]
    KellyInapplicable { pattern: usize, order: usize },

    #[error("inconsistent deck: {0}")]
    InconsistentDeck(String),

    #[error("input is not a U-polynomial")]
    NotUPolynomial,

    #[error("not a U_lab polynomial: {0}")]
    NotULabPolynomial(String),

    #[error("singular substitution: {0}")]
    SingularSubstitution(String),

    #[error("deck/radius outside algorithm's domain: {0}")]
    OutsideDomain(String),

    #[error("formula error at position {position}: {message}")]
    Formula { position: usize, message: String },

    #[error("free variables in sentence: {0}")]
    FreeVariables(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }

    pub(crate) fn inconsistent(message: impl Into<String>) -> Self {
        Error::InconsistentDeck(message.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
