//! `frobcl`: batch driver for Frobenius-power and Frobenius-closure
//! computations over quotients of F_p[x_1, ..., x_n].
//!
//! Exit codes: 0 success, 1 input error, 2 a computation hit its bounds
//! (chain not stabilized or degree cap exceeded).

pub mod commands;
pub mod report;
pub mod ringfile;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use ringfile::{parse_ring_file, NamedIdeal, RingFile, RingFileError};

pub const MAX_DEGREE_ENV: &str = "FROB_MAX_DEGREE";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    /// Bounds were hit; any partial report has already been written.
    #[error("{0}")]
    Incomplete(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Incomplete(_) => 2,
        }
    }
}

impl From<frobenius_core::Error> for CliError {
    fn from(e: frobenius_core::Error) -> Self {
        use frobenius_core::Error as E;
        match e {
            E::NotStabilized(_) | E::DegreeCapExceeded { .. } => CliError::Incomplete(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "frobcl", version, about = "Frobenius powers and closures over F_p[x_1..x_n]/J")]
pub struct Cli {
    /// Worker threads for census and eta rows
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Ring description file
    #[arg(long)]
    pub ring: PathBuf,
    /// Write the full report as JSON
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args, Clone, Copy)]
pub struct Bounds {
    #[arg(long, default_value_t = 8)]
    pub emax: u32,
    /// Consecutive equal chain terms required for stability
    #[arg(long, default_value_t = 2)]
    pub window: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduced Gröbner basis of I + J
    Gb {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        ideal: String,
    },
    /// Membership of a polynomial in I + J
    Member {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        poly: String,
    },
    /// Checks whether comma-separated elements form a regular sequence in R
    Regseq {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        elems: String,
    },
    /// Frobenius-closure chain of an ideal
    Closure {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        ideal: String,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Q-number of an ideal
    Qnumber {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        ideal: String,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Closure chains over a family of ideals and the uniform exponent
    Census {
        #[command(flatten)]
        common: Common,
        /// Comma-separated generators with `{name}` exponent placeholders
        #[arg(long)]
        template: Option<String>,
        /// Placeholder values, `a=1..3` or `a=1,2,5`
        #[arg(long = "range")]
        ranges: Vec<String>,
        /// Base ideal for --frobenius-family
        #[arg(long)]
        ideal: Option<String>,
        /// Use the family I^[p^n], n = 0..=nmax
        #[arg(long)]
        frobenius_family: bool,
        #[arg(long)]
        nmax: Option<u32>,
        #[command(flatten)]
        bounds: Bounds,
        /// Write one CSV row per family member
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// HSL-number estimate from a system of parameters
    Eta {
        #[command(flatten)]
        common: Common,
        /// Comma-separated system of parameters
        #[arg(long)]
        sop: String,
        #[arg(long, default_value_t = 2)]
        nmax: u32,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Compares (a^F)^[p^e] with a^[p^e] for a partial system of parameters a
    Paramcheck {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        ideal: String,
        /// Elements completing the ideal's generators to a system of parameters
        #[arg(long, default_value = "")]
        extend: String,
        #[arg(long)]
        e: u32,
        #[command(flatten)]
        bounds: Bounds,
    },
}

/// Parses `argv` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.jobs {
        Some(0) => Err(CliError::Input("--jobs: must be at least 1".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| commands::dispatch(&cli.command)),
            Err(e) => Err(CliError::Input(format!("--jobs: {e}"))),
        },
        None => commands::dispatch(&cli.command),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
