use thiserror::Error;

use crate::resolution::BudgetTrace;

#[derive(Error, Debug, Clone)]
pub enum DgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("resolution budget exhausted after {} generators", .0.total_generators())]
    Budget(BudgetTrace),
    #[error("algebra is not Gorenstein: {0}")]
    NotGorenstein(String),
    #[error("module is decomposable")]
    Decomposable,
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, DgError>;
