use thiserror::Error;

use crate::catalog::Family;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid degree d = {0}: only V_3, V_4 and V_5 are supported")]
    InvalidDegree(i64),

    #[error("invalid Chern data: {0}")]
    InvalidChern(String),

    #[error("invalid rank r = {0}: rank must be at least 3")]
    InvalidRank(u32),

    #[error("{family} is not available on V_{d}")]
    UnavailableBlock { family: Family, d: u8 },

    #[error("not admissible: {0}")]
    NotAdmissible(String),

    #[error("rank {rank} exceeds the oracle bound {bound}")]
    BoundExceeded { rank: u32, bound: u32 },

    #[error("non-integral {what}: {value}")]
    NonIntegral { what: &'static str, value: String },
}

pub type Result<T> = std::result::Result<T, Error>;
