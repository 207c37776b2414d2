use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::report::{canonical_json, run, Outcome, RunOptions};
use crate::{CliError, Input, EXIT_AUDIT, EXIT_INPUT, EXIT_OK};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum ErrorPolicy {
    /// per-label errors are reported but do not change the exit code
    #[default]
    Continue,
    /// any per-label error gives exit code 1
    Fail,
}

pub struct BatchOutcome {
    /// in input order
    pub entries: Vec<(String, Result<Outcome, CliError>)>,
}

/// One label per line; blank lines and `#` comments are skipped.
pub fn read_labels(path: &Path) -> Result<Vec<String>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::new("batch", format!("{}: {e}", path.display())))?;
    Ok(text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect())
}

pub fn run_batch(labels: &[String], opts: &RunOptions, jobs: Option<usize>) -> Result<BatchOutcome, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| CliError::new("batch", e))?;
    let entries = pool.install(|| {
        labels
            .par_iter()
            .map(|l| (l.clone(), run(&Input::Label(l.clone()), opts)))
            .collect::<Vec<_>>()
    });
    Ok(BatchOutcome { entries })
}

impl BatchOutcome {
    pub fn reports(&self) -> impl Iterator<Item = &Outcome> {
        self.entries.iter().filter_map(|(_, r)| r.as_ref().ok())
    }

    pub fn errors(&self) -> impl Iterator<Item = (&str, &CliError)> {
        self.entries.iter().filter_map(|(l, r)| r.as_ref().err().map(|e| (l.as_str(), e)))
    }

    pub fn audit_failed(&self) -> bool {
        self.reports().any(|o| o.audit_failed)
    }

    pub fn exit_code(&self, policy: ErrorPolicy) -> i32 {
        if self.audit_failed() {
            EXIT_AUDIT
        } else if policy == ErrorPolicy::Fail && self.errors().next().is_some() {
            EXIT_INPUT
        } else {
            EXIT_OK
        }
    }

    pub fn write_reports(&self, dir: &Path) -> std::io::Result<()> {
        fs::create_dir_all(dir)?;
        for o in self.reports() {
            fs::write(dir.join(format!("{}.json", o.label)), canonical_json(&o.report))?;
        }
        fs::write(dir.join("summary.json"), canonical_json(&self.summary_json()))
    }

    pub fn summary_json(&self) -> Value {
        let rows: Vec<Value> = self
            .entries
            .iter()
            .map(|(label, r)| match r {
                Ok(o) => {
                    let s = &o.summary;
                    json!({
                        "label": label, "g": s.g, "q": s.q, "newton": s.newton, "m": s.m,
                        "delta": s.delta, "certified": s.certified, "audit": s.audit,
                    })
                }
                Err(e) => json!({ "label": label, "error": e.to_string() }),
            })
            .collect();
        json!({ "entries": rows })
    }

    pub fn summary_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<20} {:>3} {:>6} {:<16} {:>3} {:>5} {:<9} audit",
            "label", "g", "q", "newton", "m", "delta", "certified"
        );
        for (label, r) in &self.entries {
            match r {
                Ok(o) => {
                    let s = &o.summary;
                    let m = s.m.map_or("-".to_string(), |m| m.to_string());
                    let _ = writeln!(
                        out,
                        "{:<20} {:>3} {:>6} {:<16} {:>3} {:>5} {:<9} {}",
                        label, s.g, s.q, s.newton, m, s.delta, s.certified, s.audit
                    );
                }
                Err(e) => {
                    let _ = writeln!(out, "{label:<20} error: {e}");
                }
            }
        }
        out
    }
}
