use thiserror::Error;

/// Errors raised by the aggregation library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid ranking: {0}")]
    InvalidRanking(String),

    #[error("invalid top-k list: {0}")]
    InvalidList(String),

    #[error("invalid group assignment: {0}")]
    InvalidGroups(String),

    #[error("invalid fairness parameters: {0}")]
    InvalidFairness(String),

    #[error("cannot parse rational {0:?}")]
    ParseRational(String),

    #[error("infeasible bounds: {0}")]
    InfeasibleBounds(String),

    #[error("list is on the {found} side, expected {expected}")]
    WrongSide { expected: &'static str, found: &'static str },

    #[error("no feasible solution exists")]
    Infeasible,

    #[error("{what} = {actual} exceeds the guard of {limit}")]
    TooLarge {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("enumeration cap of {cap} feasible count vectors exceeded")]
    EnumerationCapExceeded { cap: usize },

    #[error("malformed formula: {0}")]
    MalformedFormula(String),

    #[error("invalid flow network: {0}")]
    InvalidNetwork(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
