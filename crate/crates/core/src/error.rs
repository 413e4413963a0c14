use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("enumerating compositions of {n} exceeds the enumeration cap of {cap}")]
    EnumerationLimit { n: u32, cap: u32 },

    #[error("staircase length must be at least 1 (got {0})")]
    InvalidPattern(u32),

    #[error("truncation order must be at least 1 (got {0})")]
    InvalidTruncation(u32),

    #[error("series is not a unit: x^0 part has constant {constant} and {extra} other term(s)")]
    NonUnit { constant: BigInt, extra: usize },

    #[error("x-degree {degree} exceeds the truncation order {trunc}")]
    TruncationExceeded { degree: u32, trunc: u32 },

    #[error("matrix of dimension {dim} exceeds the direct determinant limit of {limit}")]
    DeterminantLimit { dim: usize, limit: usize },

    #[error("unknown {kind} `{name}` (available: {available})")]
    UnknownStrategy {
        kind: &'static str,
        name: String,
        available: String,
    },

    #[error("malformed series: {0}")]
    MalformedSeries(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
