use thiserror::Error;

use crate::parse::ParseError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{what} = {value} exceeds the supported limit {limit}")]
    BudgetExceeded {
        what: &'static str,
        value: u64,
        limit: u64,
    },

    #[error("explicit product needs {vertices} vertices, above the oracle bound {bound}")]
    OracleBound { vertices: u64, bound: u64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("unbound variable `{0}` in ground expression")]
    UnboundVariable(String),

    #[error("unsupported equation: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
