use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cyclotomic value has nonzero irrational part")]
    NotRational,
    #[error("value {0} is not a nonnegative integer")]
    NotInteger(String),
    #[error("group order {order} exceeds cap {cap}")]
    GroupTooLarge { order: u128, cap: u64 },
    #[error("class does not belong to this group")]
    UnknownClass,
    #[error("type I classes require a nonzero constant term")]
    ZeroConstant,
    #[error("enumeration needs {needed} candidates, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
