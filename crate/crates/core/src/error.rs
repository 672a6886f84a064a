use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid root system type {label}{rank}")]
    InvalidType { label: String, rank: usize },

    #[error("rank {rank} exceeds the configured cap {cap}")]
    RankCap { rank: usize, cap: usize },

    #[error("parabolic subset contains node {node}, but the rank is {rank}")]
    InvalidParabolic { node: usize, rank: usize },

    #[error("invalid character lattice: {0}")]
    InvalidLattice(String),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("oracle refused: free parameter space has dimension {required} over F_{prime}, cap is {cap}")]
    OracleCap {
        required: usize,
        cap: usize,
        prime: u64,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
