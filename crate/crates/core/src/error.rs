use thiserror::Error;

/// Failure modes shared by every computation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("divergent series: {0}")]
    Divergence(String),
    #[error("term budget exceeded: {needed} terms requested, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
