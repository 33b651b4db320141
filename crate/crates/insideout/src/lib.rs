//! Files and pictures for inside-out dissections: the JSON record format,
//! verification reports, boundary census, SVG and OFF output.

pub mod census;
pub mod json;
pub mod render;

use thiserror::Error;

/// Errors from reading, writing or rendering records.
#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
    #[error("{path}: bad number {text:?}")]
    NumberFormat { path: String, text: String },
    #[error("{path}: {source}")]
    Invariant { path: String, source: insideout_core::Error },
    #[error(transparent)]
    Core(#[from] insideout_core::Error),
    #[error("this operation needs a {expected}D record, got {found}D")]
    WrongSpace { expected: u8, found: u8 },
    #[error("bad option: {0}")]
    Options(String),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
}
