//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("index out of range: {0}")]
    Index(String),
    #[error("curve is not balanced at vertex {vertex}")]
    Unbalanced { vertex: usize },
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("ideal has the wrong rank: expected {expected}, found {found}")]
    IdealRank { expected: usize, found: usize },
    #[error("variable x{0} vanishes on the plane (loop of the matroid)")]
    Loop(usize),
    #[error("curve is not contained in the tropical plane: {0}")]
    NotInFan(String),
    #[error("not a basis of the matroid: {0:?}")]
    NotABasis(Vec<usize>),
    #[error("curve has non-integral vertices; rescale first")]
    NonIntegral,
    #[error("inconsistent curve: {0}")]
    Inconsistent(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("integer overflow")]
    Overflow,
}

pub type Result<T> = std::result::Result<T, Error>;
