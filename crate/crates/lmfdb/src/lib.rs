//! Client for isogeny class records from the LMFDB, with a local cache of
//! canonical JSON files, and comparison against locally computed invariants.

mod client;
mod record;
mod validate;

pub use client::{load_cache_dir, Client, ClientConfig, DEFAULT_BASE_URL, DEFAULT_TABLE};
pub use record::{parse_response, LmfdbRecord};
pub use validate::{cross_validate, Computed, Diff, DiffKind};

#[derive(Debug, thiserror::Error)]
pub enum LmfdbError {
    #[error("no isogeny class with label {0}")]
    NotFound(String),
    #[error("{0} is not cached and the client is offline")]
    Offline(String),
    #[error("request for {label} failed after {attempts} attempts: {message}")]
    Http { label: String, attempts: u32, message: String },
    #[error("unexpected response schema: missing or malformed field `{0}`")]
    SchemaDrift(String),
    #[error("record for {label} is inconsistent with its label: {reason}")]
    Inconsistent { label: String, reason: String },
    #[error("label mismatch: report is for {ours}, record is for {theirs}")]
    LabelMismatch { ours: String, theirs: String },
    #[error("cache: {0}")]
    Cache(#[from] std::io::Error),
    #[error("cache file is not a valid record: {0}")]
    CacheFormat(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, LmfdbError>;
