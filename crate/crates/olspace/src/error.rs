use thiserror::Error;

/// Errors raised by constructors, operations and the numeric solvers.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A stated precondition of the operation does not hold for the input.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A space specification (or one of its parts) is malformed.
    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    /// An iterative solver exhausted its budget. `best` is still a valid
    /// upper bound on the quantity being minimized.
    #[error("numerical failure: {message} (best value {best})")]
    Numerical { message: String, best: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
    pub fn invalid_spec(msg: impl Into<String>) -> Self {
        Error::InvalidSpec(msg.into())
    }
}
