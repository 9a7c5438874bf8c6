use thiserror::Error;

use crate::number_theory::HypothesisFailure;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{a} is not a unit modulo {n}")]
    NotAUnit { a: u64, n: u64 },

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("standing hypotheses fail: {}", join_failures(.0))]
    Hypothesis(Vec<HypothesisFailure>),

    #[error("unsupported group: {0}")]
    Unsupported(String),

    #[error("operands belong to different groups ({left:?} vs {right:?})")]
    GroupMismatch { left: Vec<u64>, right: Vec<u64> },

    #[error("enumeration needs {required} codewords but the budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("invalid input: {0}")]
    Parse(String),
}

fn join_failures(failures: &[HypothesisFailure]) -> String {
    failures
        .iter()
        .map(|f| f.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
