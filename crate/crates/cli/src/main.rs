//! `jack-nabla`: tables, identity suites and positivity scans for the Jack
//! super nabla operator.
//!
//! Exit codes: 0 success, 2 a mathematical check failed, 64 bad usage,
//! 70 resource limit, 74 I/O failure.

mod cache;
mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use jack_nabla::coeff::BigRational;

pub const EXIT_VIOLATION: u8 = 2;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_RESOURCE: u8 = 70;
pub const EXIT_IO: u8 = 74;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Resource(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Resource(_) => EXIT_RESOURCE,
            CliError::Io(_) => EXIT_IO,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Resource(m) | CliError::Io(m) => m,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum AlphaMode {
    Symbolic,
    Rational(BigRational),
}

impl AlphaMode {
    pub fn label(&self) -> String {
        match self {
            AlphaMode::Symbolic => "symbolic".to_string(),
            AlphaMode::Rational(r) => r.to_string(),
        }
    }
}

impl FromStr for AlphaMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("symbolic") || s == "a" {
            return Ok(AlphaMode::Symbolic);
        }
        let r: BigRational = s
            .parse()
            .map_err(|_| format!("expected `symbolic` or a rational p/q, got `{s}`"))?;
        if r == BigRational::from_integer(0.into()) {
            return Err("α must be nonzero".to_string());
        }
        Ok(AlphaMode::Rational(r))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    Jack,
    Operator,
    Coeff,
    Moments,
}

#[derive(Debug, Parser)]
#[command(name = "jack-nabla", version, about = "Exact Jack super nabla calculus")]
pub struct Cli {
    /// `symbolic` (exact in ℚ(α)) or a nonzero rational such as `3/2`.
    #[arg(long, global = true, default_value = "symbolic")]
    pub alpha: AlphaMode,
    /// Output format; tables of polynomials default to text, the rest to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit a table of Jack polynomials, operator columns, structure
    /// coefficients or moments.
    Table {
        #[arg(value_enum)]
        what: TableKind,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        pi: Option<String>,
        /// Coefficient family: c, g, d or f.
        #[arg(long)]
        kind: Option<String>,
        /// Operator name such as C2, C-1, N3 or Nt2.
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Run identity suites: golden, heisenberg, main-theorem, ns-diagonal,
    /// bdd-shift, characterization, dualities, agreement (rational α only)
    /// or all.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 6)]
        degree: usize,
        #[arg(long)]
        range: Option<i64>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        max_size: Option<usize>,
        #[arg(long)]
        max_l: Option<usize>,
    },
    /// Positivity scan of one coefficient family at size n.
    Scan {
        /// c-in-b, g-in-b, d-in-alpha or f-in-alpha.
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(k) = cli.jobs {
        if k == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(EXIT_USAGE);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            eprintln!("error: cannot configure worker pool: {e}");
            return ExitCode::from(EXIT_RESOURCE);
        }
    }
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
