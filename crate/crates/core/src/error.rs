use std::path::PathBuf;

use thiserror::Error;

/// Errors produced across the catalogue engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("hyperplane axiom violated: {0}")]
    AxiomViolation(String),
    #[error("{0} is not a circuit-hyperplane")]
    NotCircuitHyperplane(String),
    #[error("matroid has rank zero")]
    RankZero,
    #[error("invalid modular cut: {0}")]
    InvalidCut(String),
    #[error("ground set is empty")]
    EmptyGroundSet,
    #[error("blocks are not independent in the Johnson graph: {0}")]
    NotIndependent(String),
    #[error("budget exceeded: {what}")]
    BudgetExceeded { what: String, checkpoint: Option<PathBuf> },
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("format error at line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("checksum mismatch (expected {expected}, found {found})")]
    ChecksumMismatch { expected: String, found: String },
    #[error("unknown column `{0}`")]
    UnknownColumn(String),
    #[error("type mismatch for column `{column}`: {msg}")]
    TypeMismatch { column: String, msg: String },
    #[error("parse error at column {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
