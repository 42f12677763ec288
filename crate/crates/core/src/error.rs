use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid graph parameters: {0}")]
    InvalidParameters(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("self-loop on vertex {vertex} at line {line}")]
    SelfLoop { line: usize, vertex: usize },

    #[error("duplicate edge ({u}, {v}) at line {line}")]
    DuplicateEdge { line: usize, u: usize, v: usize },

    #[error("vertex {vertex} out of range for n = {n} at line {line}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },

    #[error("size guard exceeded: {what} (got {got}, limit {limit})")]
    SizeGuard {
        what: &'static str,
        got: usize,
        limit: usize,
    },

    #[error("matrix is not symmetric (max asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal mass {off:e})")]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("matrix is rank deficient (rank {rank} < {cols} columns)")]
    RankDeficient { rank: usize, cols: usize },

    #[error("matrix is indefinite (most negative eigenvalue {min_eigenvalue:e})")]
    Indefinite { min_eigenvalue: f64 },

    #[error("invalid clique cover: {0}")]
    InvalidCover(String),

    #[error("zero weight on incidence pair (vertex {vertex}, clique {clique})")]
    ZeroWeight { vertex: usize, clique: usize },

    #[error("{0}")]
    NotSubgraph(String),

    #[error("Gram completion failed: {0}")]
    GramCompletion(String),

    #[error("numeric search did not converge: {0}")]
    SearchFailed(String),

    #[error("certificate verification failed: {0}")]
    Verification(String),

    #[error("unknown name: {0}")]
    UnknownName(String),
}

pub type Result<T> = std::result::Result<T, Error>;
