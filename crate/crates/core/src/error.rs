use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a system on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("{0} vertices requested; at most {max} are supported", max = crate::system::MAX_VERTICES)]
    TooManyVertices(usize),

    #[error("need at least {min} vertices, got {n}")]
    TooFewVertices { n: usize, min: usize },

    #[error("a triple needs three distinct vertices, got {0:?}")]
    DegenerateTriple([usize; 3]),

    #[error("vertices {0} and {1} must be distinct")]
    SameVertex(usize, usize),

    #[error("system contains a K4 on {0:?}")]
    ContainsK4([usize; 4]),

    #[error("not a permutation of 0..{0}")]
    InvalidPermutation(usize),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid layout: {0}")]
    InvalidLayout(String),

    #[error("exhaustive search supports at most {max} vertices, got {n}")]
    SearchTooLarge { n: usize, max: usize },

    #[error("vertex counts must be consecutive, got {prev} then {next}")]
    NotConsecutive { prev: usize, next: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}
