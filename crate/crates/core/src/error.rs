use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Syntax(#[from] serde_json::Error),

    #[error("bridge count must be positive, got {0}")]
    NonPositiveBridges(i64),

    #[error("generator index {index} out of range 1..={max}")]
    IndexOutOfRange { index: i64, max: usize },

    #[error("at least {required} bridges required, got {n}")]
    TooFewBridges { n: usize, required: usize },

    #[error("word is on {word} bridges but the arc system has {arcs}")]
    BridgeMismatch { word: usize, arcs: usize },

    #[error("gap indices must differ, got {0} twice")]
    SameGap(usize),

    #[error("gap index {index} out of range 1..={n}")]
    GapOutOfRange { index: usize, n: usize },

    #[error("invalid arc system: {0}")]
    InvalidArcs(String),

    #[error("invalid Morse word: {0}")]
    InvalidMorse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
