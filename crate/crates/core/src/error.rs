use thiserror::Error;

/// Errors raised anywhere in the pipeline. Each variant names the stage it came from.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown letter '{letter}' for rank {rank}")]
    UnknownLetter { letter: char, rank: usize },

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("ring mismatch: {left} variables vs {right}")]
    RingMismatch { left: usize, right: usize },

    #[error("unsupported rank {0}: character variety equations are generated for rank 1 to 3 only")]
    UnsupportedRank(usize),

    #[error("matrix determinant is {0}, expected 1")]
    Determinant(String),

    #[error("ideal already carries a slope coordinate")]
    AlreadyAugmented,

    #[error("ideal has no slope coordinate")]
    MissingSlope,

    #[error("module is not finitely generated over the slope ring")]
    NotFinite,

    #[error("groebner budget exhausted after {pairs} pairs (degree {degree})")]
    Budget {
        pairs: usize,
        degree: u32,
        checkpoint: Box<crate::poly::Checkpoint>,
    },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
