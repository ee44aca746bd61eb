use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{op}: incompatible shapes {left:?} and {right:?}")]
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("index {index} out of range for dimension {bound}")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("duplicate row index {index} in selection")]
    DuplicateIndex { index: usize },

    /// Zero entries are never stored, so filtering for 0 is unanswerable.
    #[error("cannot filter for value 0: zero entries are not stored")]
    ZeroFilterTarget,

    #[error("matrix invariant violated: {0}")]
    CorruptMatrix(String),

    #[error("invalid edge list: {0}")]
    InvalidEdgeList(String),

    #[error("incidence row {row} has {nnz} entries, expected exactly two 1s")]
    MalformedIncidence { row: usize, nnz: usize },

    #[error("duplicate edge ({u}, {v}) in incidence matrix")]
    DuplicateEdge { u: usize, v: usize },

    /// A masked triangle sum failed its divisibility check, which signals an
    /// adjacency matrix that is asymmetric, non-binary, or has diagonal
    /// entries.
    #[error("masked sum {sum} is not divisible by {divisor}: input is not a simple undirected adjacency")]
    InvalidAdjacency { sum: i64, divisor: i64 },

    #[error("truss order k must be at least 2, got {k}")]
    InvalidK { k: u32 },

    #[error("grid side must be at least 2, got {side}")]
    InvalidGridSide { side: usize },

    #[error("benchmark configuration: {0}")]
    Config(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
