use std::path::PathBuf;

use crate::data::Label;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("expected exactly two distinct labels, found {found}")]
    LabelCount { found: usize },

    #[error("dataset is empty")]
    EmptyDataset,

    #[error("class {0} has no samples")]
    EmptyClass(Label),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("sampling mask hides every sample of class {0}")]
    MaskExcludesClass(Label),

    #[error("class {label} has {size} samples, fewer than the {k} folds requested")]
    FoldTooSmall { label: Label, size: usize, k: usize },

    #[error("non-finite value encountered at iteration {iteration}: {what}")]
    NonFinite { iteration: u64, what: &'static str },

    #[error("dataset has {size} samples, above the batch solver limit of {limit}")]
    OracleTooLarge { size: usize, limit: usize },

    #[error("model file format version {found} is not supported (expected {expected})")]
    VersionMismatch { found: u32, expected: u32 },

    #[error("model file checksum mismatch")]
    Checksum,

    #[error("model file truncated: {0}")]
    Truncated(String),

    #[error("malformed model file: {0}")]
    Model(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn invalid(message: impl Into<String>) -> Self {
        Error::InvalidParameter(message.into())
    }
}
