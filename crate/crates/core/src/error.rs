use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("switching vector has length {got}, graph has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("edge sequence is not a walk (breaks at position {position})")]
    NotAWalk { position: usize },

    #[error("graph has a negative loop at vertex {vertex}")]
    NegativeLoop { vertex: usize },

    #[error("{what}: order {n} exceeds the bound {bound}")]
    TooLarge { what: &'static str, n: usize, bound: usize },

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("linear program is infeasible: vertex {vertex} lies in no column")]
    Infeasible { vertex: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// A search contradicted a proven statement. Always a bug.
    #[error("critical defect: {0}")]
    CriticalDefect(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
