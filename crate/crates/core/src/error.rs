use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("element {id} is out of range for a ground set of size {n}")]
    InvalidElement { id: usize, n: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("objective is degenerate: every singleton value is zero")]
    DegenerateObjective,

    #[error("instance too large for exhaustive check: n = {n} exceeds {limit}")]
    InstanceTooLarge { n: usize, limit: usize },

    #[error("set {0:?} is not a base of the matroid")]
    NotABase(Vec<usize>),

    #[error("enumeration of {required} candidates exceeds the budget of {cap}")]
    BudgetExceeded { required: u64, cap: u64 },

    #[error("proof-chain verification requires a myopic solution, got {0}")]
    WrongAlgorithm(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("failed to parse instance file: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
