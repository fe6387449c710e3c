use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("permutation size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("permutation pair does not act transitively (disconnected surface)")]
    Disconnected,

    #[error("invalid cylinder diagram: {0}")]
    InvalidDiagram(String),

    #[error("no bit assigned to zero {0}")]
    MissingBit(usize),

    #[error("malformed surface coordinates: {0}")]
    MalformedCoordinates(String),

    #[error("stratum {0} is not in the table of candidate strata")]
    UnknownStratum(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency error: {0}")]
    Consistency(String),

    #[error("stage {stage}: i/o failure on {path}: {source}")]
    Io {
        stage: &'static str,
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("stage {stage}: checkpoint digest mismatch for {path}; refusing to resume")]
    DigestMismatch { stage: &'static str, path: PathBuf },

    #[error("invalid run configuration: {0}")]
    Config(String),
}
