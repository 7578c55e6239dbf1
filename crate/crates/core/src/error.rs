use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("group is not a subgroup of the ambient group")]
    NotSubgroup,

    #[error("group is not transitive on its domain")]
    NotTransitive,

    #[error("actions are not isomorphic: {0}")]
    NotIsomorphic(String),

    #[error("search budget exhausted: {what} exceeded limit {limit}")]
    Budget { what: &'static str, limit: u64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("independent computations disagree: {0}")]
    Inconsistent(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}
