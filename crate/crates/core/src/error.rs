use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("vertex {vertex} has degree {degree}, expected 3")]
    NonCubic { vertex: usize, degree: usize },

    #[error("edge {edge} is a loop at vertex {vertex}")]
    Loop { edge: usize, vertex: usize },

    #[error("vertex count {0} is odd")]
    OddVertexCount(usize),

    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("edge {edge} out of range (m = {m})")]
    EdgeOutOfRange { edge: usize, m: usize },

    #[error("unknown graph name `{0}`")]
    UnknownGraph(String),

    #[error("random cubic graph generation failed after {0} attempts")]
    GenerationFailed(usize),

    #[error("graph has no perfect matching")]
    NoPerfectMatching,

    #[error("matching is not perfect: {size} edges for {n} vertices")]
    MatchingNotPerfect { size: usize, n: usize },

    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),

    #[error("invalid walk set: {0}")]
    InvalidWalks(String),

    #[error("property index {0} out of range 1..=5")]
    PropertyOutOfRange(u8),

    #[error("configuration space of 2^{bits} exceeds cap 2^{cap}")]
    CapExceeded { bits: usize, cap: usize },

    #[error("{0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
