use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("part sizes must be positive (got m = {m}, n = {n})")]
    ZeroPartSize { m: usize, n: usize },

    #[error("invalid extremal parameters: {0}")]
    InvalidExtremal(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("vertex index {index} out of range for a part of size {size}")]
    VertexOutOfRange { index: usize, size: usize },

    #[error("duplicate edge ({x}, {y})")]
    DuplicateEdge { x: usize, y: usize },

    #[error("edge ({u}, {v}) joins two vertices of the same part")]
    WithinPartEdge { u: usize, v: usize },

    #[error("{op}: instance exceeds the size cap ({limit})")]
    SizeCap { op: &'static str, limit: String },

    #[error("power iteration did not reach the residual target after {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("parameters outside the family range: {0}")]
    FamilyRange(String),

    #[error("negative discriminant {0}; largest root is not real")]
    NegativeDiscriminant(i128),

    #[error("degree sums differ: a*m = {am}, b*n = {bn}")]
    DegreeSumMismatch { am: usize, bn: usize },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid demand: {0}")]
    InvalidDemand(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unknown theorem id {0:?}")]
    UnknownTheorem(String),

    #[error("parameter mismatch: {0}")]
    ParamMismatch(String),

    /// A checked mathematical guarantee failed at runtime.
    #[error("internal contradiction: {0}")]
    Contradiction(String),
}
