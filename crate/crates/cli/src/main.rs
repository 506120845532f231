use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use boolcirc::Basis;
use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

mod commands;
mod report;

use report::Format;

/// Seconds used when neither `--timeout` nor the environment sets one.
const DEFAULT_TIMEOUT_SECS: u64 = 60;
const TIMEOUT_ENV: &str = "BOOLCIRC_TIMEOUT";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] boolcirc::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// What a successful run concluded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Done,
    /// UNSAT, not equivalent, no circuit, database miss, prime.
    Negative,
    Timeout,
}

#[derive(Parser)]
#[command(name = "boolcirc", version, about = "Generate, analyze, synthesize and minimize Boolean circuits")]
struct Cli {
    /// Print one JSON object instead of `key: value` lines.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BasisArg {
    Xaig,
    Aig,
}

impl From<BasisArg> for Basis {
    fn from(b: BasisArg) -> Basis {
        match b {
            BasisArg::Xaig => Basis::Xaig,
            BasisArg::Aig => Basis::Aig,
        }
    }
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long, value_enum, default_value = "xaig")]
    basis: BasisArg,
    /// Per solver call, in seconds. Defaults to $BOOLCIRC_TIMEOUT or 60.
    #[arg(long)]
    timeout: Option<u64>,
}

impl Common {
    fn timeout(&self) -> Result<Duration, CliError> {
        let secs = match self.timeout {
            Some(s) => s,
            None => match std::env::var(TIMEOUT_ENV) {
                Ok(v) => v
                    .trim()
                    .parse()
                    .map_err(|_| CliError::Usage(format!("{TIMEOUT_ENV} must be a number of seconds")))?,
                Err(_) => DEFAULT_TIMEOUT_SECS,
            },
        };
        Ok(Duration::from_secs(secs))
    }
}

#[derive(Args, Clone)]
struct Output {
    /// Output file; the format follows the extension unless --format is given.
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

/// A target function: explicit columns or a named family.
#[derive(Args, Clone)]
struct TableArgs {
    /// Output column over {0,1,*}, row 0 first; repeat for more outputs.
    #[arg(long = "table", value_name = "COLUMN")]
    tables: Vec<String>,
    /// Named family: maj, sum, sort, mult, sqr, sqrt, div, mod.
    #[arg(long, requires = "n")]
    function: Option<String>,
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Fa,
    Ha,
    Sum,
    Maj,
    Sort,
    Mult,
    Sqr,
    Div,
    Equal,
    Ite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Effort {
    Low,
    High,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a circuit of a standard family.
    Gen {
        #[arg(value_enum)]
        family: Family,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[command(flatten)]
        common: Common,
        /// Synthesize the comparator after the counter (maj, sort).
        #[arg(long)]
        hybrid: bool,
        /// Run subcircuit minimization on the result.
        #[arg(long)]
        minimize: bool,
        /// Minimization budget in seconds.
        #[arg(long, default_value_t = 300)]
        budget: u64,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        out: Output,
    },
    /// Print size, shape and properties of a circuit.
    Info { file: PathBuf },
    /// Find an input making every output one (or --target).
    Sat {
        file: PathBuf,
        /// Required output values, e.g. 101.
        #[arg(long)]
        target: Option<String>,
        /// Also write the Tseitin CNF in DIMACS.
        #[arg(long)]
        dimacs: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Check two circuits for equivalence with a miter.
    Equiv {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Exact synthesis of a small, possibly partial, function.
    Synth {
        #[command(flatten)]
        table: TableArgs,
        #[command(flatten)]
        common: Common,
        /// Ask for a circuit of at most this size only.
        #[arg(long, conflicts_with = "upper")]
        size: Option<usize>,
        /// Start of the descending search for the minimum.
        #[arg(long, default_value_t = 12)]
        upper: usize,
        #[arg(long)]
        no_symmetry_breaking: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Shrink a circuit.
    Minimize {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "high")]
        effort: Effort,
        #[arg(long, default_value_t = 300)]
        budget: u64,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        out: Output,
    },
    /// Convert between BENCH text, AIGER ASCII and DOT.
    Convert {
        input: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Render a circuit as DOT.
    Draw {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build, inspect and query the database of small circuits.
    Db {
        #[command(subcommand)]
        action: DbAction,
    },
    /// Factor an integer through a satisfiability query.
    Factor {
        k: u64,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum DbAction {
    Build {
        #[command(flatten)]
        common: Common,
        /// `desk`, `full` or a list such as `3x1,2x2`.
        #[arg(long, default_value = "desk")]
        slices: String,
        #[arg(long, default_value_t = 3600)]
        budget: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
    Stats {
        db: PathBuf,
    },
    Lookup {
        db: PathBuf,
        #[command(flatten)]
        table: TableArgs,
        #[command(flatten)]
        out: Output,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match commands::run(cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Negative) => ExitCode::from(1),
        Ok(Outcome::Timeout) => ExitCode::from(3),
        Err(e) => {
            if json {
                println!("{}", serde_json::json!({ "error": e.to_string() }));
            }
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
