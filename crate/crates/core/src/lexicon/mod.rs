//! Word vectors, hyponym lists, and the operators built from them.

mod hyponyms;
mod store;
mod vectors;

use thiserror::Error;

use crate::operators::OperatorError;

pub use hyponyms::{load_hyponyms, parse_hyponyms, HyponymLexicon};
pub use store::{build_store, load_store, save_store, OperatorStore, WordStats, STORE_MAGIC, STORE_VERSION};
pub use vectors::{load_vectors, read_vectors, LoadOptions, VectorLexicon};

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: vector has dimension {got}, expected {expected}")]
    InconsistentDim { line: usize, expected: usize, got: usize },
    #[error("line {line}: cannot parse `{token}` as a float")]
    BadFloat { line: usize, token: String },
    #[error("line {line}: no vector components")]
    MissingVector { line: usize },
    #[error("no usable vectors in input")]
    EmptyFile,
    #[error("line {line}: malformed hyponym record: {message}")]
    MalformedHyponym { line: usize, message: String },
    #[error("corrupt operator store: {0}")]
    Corrupt(String),
    #[error("unsupported operator store version {found} (this build reads version {supported})")]
    UnsupportedVersion { found: u32, supported: u32 },
    #[error("stored operator for `{word}` is invalid: {reason}")]
    InvalidOperator { word: String, reason: String },
    #[error(transparent)]
    Operator(#[from] OperatorError),
}

impl LexiconError {
    pub(crate) fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        LexiconError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}
