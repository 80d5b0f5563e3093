use thiserror::Error;

use crate::spec_parser::ParseError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotAPrimePower(u64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("group order exceeds cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("search failed: {0}")]
    SearchFailed(String),
    #[error("target {0} is not in the open interval (0, 1)")]
    InvalidTarget(String),
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("semantic error: {0}")]
    Semantic(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
