use thiserror::Error;

/// Errors surfaced by the library. Each variant maps to a distinct CLI exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported factor: {0}")]
    UnsupportedFactor(String),
    #[error("matrix is not nilpotent: kernel dimension stabilizes at {kernel_dim} < {size} from power {power}")]
    NotNilpotent {
        power: usize,
        kernel_dim: usize,
        size: usize,
    },
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("not admissible: {0}")]
    Inadmissible(String),
    #[error("internal check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
