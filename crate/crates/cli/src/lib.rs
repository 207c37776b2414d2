//! Report assembly and batch driver behind the `angrank` binary.

pub mod batch;
pub mod input;
pub mod report;

use std::fmt;

pub use batch::{read_labels, run_batch, BatchOutcome, ErrorPolicy};
pub use input::{parse_poly, Input};
pub use report::{canonical_json, run, Outcome, RunOptions, SummaryRow};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_AUDIT: i32 = 2;

/// A failure tagged with the stage that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub stage: &'static str,
    pub message: String,
}

impl CliError {
    pub fn new(stage: &'static str, message: impl fmt::Display) -> Self {
        CliError { stage, message: message.to_string() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.stage, self.message)
    }
}

impl std::error::Error for CliError {}
