use std::io;

use thiserror::Error;

/// Errors raised by graph construction, parsing, and the analysis pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("self-loop on vertex {0} is not allowed")]
    SelfLoop(usize),

    #[error("vertex index {index} out of range (vertex count {count})")]
    VertexOutOfRange { index: usize, count: usize },

    #[error("edge weight must be finite and > 0, got {0}")]
    InvalidWeight(f64),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("non-finite score {value} for vertex {vertex} in column `{column}`")]
    NonFinite {
        column: String,
        vertex: usize,
        value: f64,
    },

    #[error("invalid label {0:?}: labels must not contain commas or whitespace")]
    InvalidLabel(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
