use thiserror::Error;

use crate::group::Family;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed window entry {token:?}")]
    MalformedToken { token: String },
    #[error("window {window:?} is not a signed permutation of [{rank}]")]
    NotAPermutation { window: Vec<i32>, rank: usize },
    #[error("window {window:?} has a negative entry, which is not allowed in type A")]
    NegativeInTypeA { window: Vec<i32> },
    #[error("window {window:?} has an odd number of negative entries, so it is not in D_{rank}")]
    OddNegativeCount { window: Vec<i32>, rank: usize },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("rank must be positive")]
    ZeroRank,
    #[error("reflection {reflection} is not a reflection of {family:?}_{rank}")]
    IllegalReflection {
        reflection: String,
        family: Family,
        rank: usize,
    },
    #[error("group order {order} exceeds the cap of {cap} elements")]
    CapExceeded { order: u128, cap: u128 },
    #[error("{family}_{rank} is above the enumeration limit of rank {max_rank}")]
    RankCapExceeded {
        family: Family,
        rank: usize,
        max_rank: usize,
    },
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
