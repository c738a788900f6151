use thiserror::Error;

use crate::partition::{Cell, Partition};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("weight mismatch: {left} has weight {}, {right} has weight {}", left.weight(), right.weight())]
    WeightMismatch { left: Partition, right: Partition },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("cell {cell} is not a corner of {partition}")]
    NotACorner { partition: Partition, cell: Cell },

    #[error("label {0} already present in tableau")]
    DuplicateLabel(u32),

    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    #[error("invalid walk: {0}")]
    InvalidWalk(String),

    #[error("invalid (tableau, permutation) pair: {0}")]
    InvalidPair(String),

    #[error("outside the regime n >= k + lambda_2 (n = {n}, k = {k}, lambda_2 = {lambda2})")]
    Regime { n: usize, k: usize, lambda2: usize },

    #[error("character sum {numerator} is not divisible by {denominator}")]
    NonIntegral { numerator: String, denominator: String },

    #[error("limit of {limit} exceeded")]
    LimitExceeded { limit: usize },

    #[error("{0}")]
    Precondition(String),
}
