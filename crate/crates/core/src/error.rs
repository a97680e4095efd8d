use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument violated an operation's precondition.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("complex is not tight over {field}: witness subset {witness:?}")]
    NotTight { field: String, witness: Vec<String> },

    #[error("class cannot be lifted to the ambient complex: {0}")]
    NotLiftable(String),

    #[error("construction failed for {context}: {message}")]
    ConstructionFailed { context: String, message: String },

    /// An algebraic identity that must hold exactly was violated.
    #[error("verification failure: {0}")]
    Verification(String),

    #[error("catalog integrity error in {name}: {message}")]
    Catalog { name: String, message: String },

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for failures that indicate a bug or a broken invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::Verification(_) | Error::ConstructionFailed { .. } | Error::Catalog { .. }
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
