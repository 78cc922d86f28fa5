use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("{what} exceeds budget of {budget} (needs {needed})")]
    BudgetExceeded { what: &'static str, budget: usize, needed: usize },
    #[error("operation is undefined for the zero ideal")]
    ZeroIdeal,
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
