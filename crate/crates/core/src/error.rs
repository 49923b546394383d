use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero argument where a nonzero value is required ({0})")]
    Zero(&'static str),

    #[error("{0} is not prime")]
    NotPrime(String),

    #[error("{0} is not an odd prime")]
    NotOddPrime(String),

    #[error("arguments {0} and {1} are not coprime")]
    NotCoprime(String, String),

    #[error("factoring budget exceeded while factoring {0}")]
    FactorBudgetExceeded(String),

    #[error("search budget exceeded: {0}")]
    SearchBudgetExceeded(String),

    #[error("degenerate quadratic form or Gram matrix")]
    Degenerate,

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("the H1-condition is violated; {0} is undefined")]
    H1Violated(&'static str),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
