use thiserror::Error;

/// Errors raised by graph construction, algebra and the bound searches.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u32),
    #[error("operation requires an even modulus, got d = {0}")]
    OddModulus(u32),
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge {index}: {reason}")]
    InvalidEdge { index: usize, reason: String },
    #[error("invalid vertex subset: {0}")]
    InvalidSubset(String),
    #[error("invalid size bounds: {0}")]
    InvalidBounds(String),
    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not a GHZ graph ({0})")]
    NotGhz(String),
    #[error("search space of {required} exceeds the {what} cap of {cap}")]
    CapExceeded {
        what: &'static str,
        required: u128,
        cap: u128,
    },
    #[error("isomorphism dedup is limited to n <= {max}, got n = {n}")]
    DedupTooLarge { n: usize, max: usize },
    #[error("system carries no row combination contradiction: {0}")]
    NoContradiction(String),
    #[error("cross-check failed: {0}")]
    CrossCheck(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
