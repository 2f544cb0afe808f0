use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension {0} is out of range (expected 1..=4)")]
    DimensionOutOfRange(usize),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("coset enumeration did not close within {limit} cosets")]
    EnumerationOverflow { limit: usize },
    #[error("search node budget of {budget} exhausted")]
    NodeBudgetExceeded { budget: u64 },
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("generator {0} has no image")]
    UnknownGenerator(usize),
    #[error("vectors do not span a full-rank lattice")]
    RankDeficient,
    #[error("element list is not closed under multiplication")]
    NotClosed,
    #[error("group is not a subgroup of the given parent")]
    NotSubgroup,
    #[error("partition is inconsistent with the group: {0}")]
    InconsistentPartition(String),
    #[error("search space too large: {0}")]
    TooLarge(&'static str),
    #[error("no unique maximal group among {0} candidates")]
    NoUniqueMaximum(usize),
}
