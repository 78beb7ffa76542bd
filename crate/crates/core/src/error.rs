use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid Cartan data: {0}")]
    InvalidCartan(String),

    #[error("rank bound exceeded: {0}")]
    RankBound(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("-inf is not allowed in coordinate {0}")]
    NegInfNotAllowed(usize),

    #[error("-inf paired with negative coefficient {coeff} at coordinate {index}")]
    NegInfTimesNegative { index: usize, coeff: i64 },

    #[error("non-integral entry at coordinate {0}")]
    NonIntegral(usize),

    #[error("resource guard exceeded: {what} (limit {limit})")]
    Guard { what: &'static str, limit: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not invertible: {0}")]
    NotInvertible(String),
}

pub type Result<T> = std::result::Result<T, Error>;
