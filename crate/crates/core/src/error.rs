use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("infeasible strongly regular parameters: {0}")]
    InfeasibleParameters(String),

    #[error("infeasible intersection array: {0}")]
    InfeasibleArray(String),

    #[error("internal consistency violation: {0}")]
    InternalConsistency(String),

    #[error("table mismatch: {0}")]
    TableMismatch(String),

    #[error("line {line}: {message}")]
    Stream { line: usize, message: String },

    #[error("no candidates")]
    NoCandidates,
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn parse(offset: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: msg.into(),
        }
    }
}
