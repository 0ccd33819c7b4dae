use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("multiplicity at index {0} is zero")]
    ZeroMultiplicity(usize),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph has no edges")]
    Edgeless,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what}: {n} exceeds the limit of {limit}")]
    Capacity {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("graph6 parse error at byte {offset}: {message}")]
    Graph6 { offset: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
