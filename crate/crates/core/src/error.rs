//! Crate-level error type.

use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by corpus loading, feature extraction, statistics, and
/// model training.
#[derive(Debug, Error)]
pub enum Error {
    /// The Display text already carries the io cause, so the variant does
    /// not expose it as a source to avoid doubled messages in chains.
    #[error("{path}: {cause}")]
    Io {
        path: PathBuf,
        cause: std::io::Error,
    },

    /// Malformed corpus line; the message names the offending field.
    #[error("corpus line {line}: {message}")]
    CorpusLine { line: usize, message: String },

    #[error("corpus line {line}: duplicate paper id \"{id}\"")]
    DuplicateId { line: usize, id: String },

    #[error("corpus line {line}: unknown badge \"{badge}\"")]
    UnknownBadge { line: usize, badge: String },

    #[error("embedding file: {message}")]
    EmbeddingFormat { message: String },

    #[error("embedding row {row} for id \"{id}\": expected {expected} values, found {found}")]
    EmbeddingDimension {
        id: String,
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("embeddings missing for ids: {}", ids.join(", "))]
    MissingEmbeddings { ids: Vec<String> },

    /// A statistical test's preconditions were not met.
    #[error("{test}: {message}")]
    StatTest { test: &'static str, message: String },

    /// Invalid input to a model or feature operation.
    #[error("{0}")]
    InvalidInput(String),

    #[error("model file version mismatch: file has \"{found}\", this build reads \"{expected}\"")]
    ModelVersion { found: String, expected: String },

    #[error("model file: {0}")]
    ModelFormat(String),

    #[error("config: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, cause: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            cause,
        }
    }

    pub(crate) fn invalid(message: impl Into<String>) -> Self {
        Error::InvalidInput(message.into())
    }
}
