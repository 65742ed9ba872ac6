use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("{cap} exceeded: {value} > {limit}")]
    CapExceeded {
        cap: &'static str,
        limit: usize,
        value: usize,
    },
    #[error("element is not a member of the group")]
    NotMember,
    #[error("subgroup is not normal in the group")]
    NotNormal,
    #[error("not a subgroup of the group")]
    NotSubgroup,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("parse error at line {line}, column {column}: {message} (expected {expected})")]
    Parse {
        line: usize,
        column: usize,
        message: String,
        expected: String,
    },
    #[error("no faithful irreducible module over F_{field}: {reason}")]
    ExistenceFailure { field: u32, reason: String },
    #[error("failed to split module of dimension {dimension} within the retry budget of {budget}")]
    RetryBudget { dimension: usize, budget: usize },
    #[error("series did not terminate within {0} steps")]
    MaxSteps(usize),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Cap name when this is a resource error.
    pub fn cap_name(&self) -> Option<&'static str> {
        match self {
            Error::CapExceeded { cap, .. } => Some(cap),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
