use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside its documented domain.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("decode error{}: {message}", offset.map(|o| format!(" at byte {o}")).unwrap_or_default())]
    Decode { offset: Option<u64>, message: String },

    #[error("encode error: {0}")]
    Encode(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("configuration error: {0}")]
    Config(String),

    /// The thresholded cloud map has no support.
    #[error("empty cloud: {0} has no value above its gamma threshold")]
    EmptyCloud(String),

    #[error("incomplete evaluation matrix: missing {0}")]
    IncompleteMatrix(String),

    #[error("undefined ratio: clean AP is zero")]
    UndefinedRatio,

    #[error("detections reference classes without ground truth: {}", .0.join(", "))]
    UnknownClasses(Vec<String>),

    #[error("detection references unknown tile {0}")]
    UnknownTile(String),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
