use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use angrank::{
    canonical_json, parse_poly, read_labels, run, run_batch, CliError, ErrorPolicy, Input, RunOptions, EXIT_AUDIT,
    EXIT_INPUT, EXIT_OK,
};
use angrank_core::analysis::AnalysisConfig;
use angrank_lmfdb::{Client, ClientConfig, DEFAULT_BASE_URL, DEFAULT_TABLE};
use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;

#[derive(Parser)]
#[command(name = "angrank", version, about = "Angle rank and Frobenius relations of q-Weil polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one isogeny class, given by label or by coefficients
    Analyze {
        /// LMFDB-style label such as 3.2.a_ab_ac
        label: Option<String>,
        /// comma-separated coefficients, leading coefficient first
        #[arg(long, allow_hyphen_values = true, requires = "q", conflicts_with = "label")]
        poly: Option<String>,
        #[arg(long)]
        q: Option<BigInt>,
        #[command(flatten)]
        common: Common,
    },
    /// Analyze every label in FILE (one per line, '#' comments)
    Batch {
        file: PathBuf,
        /// worker threads (default: logical cores)
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value_t = ErrorPolicy::Continue)]
        on_error: ErrorPolicy,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    /// directory for JSON reports
    #[arg(long, value_name = "DIR")]
    json_out: Option<PathBuf>,
    /// never contact the LMFDB; only cached records are used
    #[arg(long)]
    offline: bool,
    /// largest splitting field degree attempted
    #[arg(long, value_name = "N")]
    degree_cap: Option<usize>,
    /// starting working precision for the relation search
    #[arg(long, value_name = "BITS")]
    precision_start: Option<u32>,
    /// compare with the LMFDB record for the label
    #[arg(long)]
    lmfdb_validate: bool,
    #[arg(long, value_name = "DIR", default_value = "lmfdb-cache")]
    lmfdb_cache: PathBuf,
    #[arg(long, value_name = "URL", default_value = DEFAULT_BASE_URL)]
    lmfdb_url: String,
    #[arg(long, value_name = "TABLE", default_value = DEFAULT_TABLE)]
    lmfdb_table: String,
    /// record per-stage timings in the report
    #[arg(long)]
    timings: bool,
}

impl Common {
    fn options(&self) -> RunOptions {
        let mut config = AnalysisConfig::default();
        if let Some(n) = self.degree_cap {
            config.galois.degree_cap = n;
        }
        if let Some(b) = self.precision_start {
            config.lattice.precision_start = b;
        }
        let lmfdb = self.lmfdb_validate.then(|| {
            Arc::new(Client::new(ClientConfig {
                base_url: self.lmfdb_url.clone(),
                table: self.lmfdb_table.clone(),
                cache_dir: self.lmfdb_cache.clone(),
                offline: self.offline,
                ..ClientConfig::default()
            }))
        });
        RunOptions { config, timings: self.timings, lmfdb }
    }
}

fn analyze(label: Option<String>, poly: Option<String>, q: Option<BigInt>, common: &Common) -> Result<i32, CliError> {
    let input = match (label, poly, q) {
        (Some(l), None, _) => Input::Label(l),
        (None, Some(p), Some(q)) => Input::Poly { descending: parse_poly(&p)?, q },
        _ => return Err(CliError::new("input", "give a label, or --poly together with --q")),
    };
    let out = run(&input, &common.options())?;
    let text = canonical_json(&out.report);
    if let Some(dir) = &common.json_out {
        std::fs::create_dir_all(dir).map_err(|e| CliError::new("output", e))?;
        let path = dir.join(format!("{}.json", out.label));
        std::fs::write(&path, &text).map_err(|e| CliError::new("output", e))?;
    }
    print!("{text}");
    Ok(if out.audit_failed { EXIT_AUDIT } else { EXIT_OK })
}

fn batch(file: PathBuf, jobs: Option<usize>, policy: ErrorPolicy, common: &Common) -> Result<i32, CliError> {
    let labels = read_labels(&file)?;
    let out = run_batch(&labels, &common.options(), jobs)?;
    if let Some(dir) = &common.json_out {
        out.write_reports(dir).map_err(|e| CliError::new("output", e))?;
    }
    print!("{}", out.summary_table());
    for (label, e) in out.errors() {
        eprintln!("{label}: {e}");
    }
    Ok(out.exit_code(policy))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT as u8 } else { EXIT_OK as u8 });
        }
    };
    let res = match cli.command {
        Command::Analyze { label, poly, q, common } => analyze(label, poly, q, &common),
        Command::Batch { file, jobs, on_error, common } => batch(file, jobs, on_error, &common),
    };
    match res {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
