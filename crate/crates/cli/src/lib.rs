//! The `submod` command line: `run`, `suite` and `complexity`.
//!
//! Exit codes: 0 success, 1 suite violation, 2 usage or input error, 3 budget exceeded.

mod complexity;
mod run;
mod suite;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use submod_core::instances::{FunctionKind, MatroidKind};
use submod_core::Error;

pub use complexity::{ComplexityCell, ComplexityRow};
pub use run::RunOutput;
pub use suite::{AlgorithmSummary, CheckSummary, SuiteReport, SuiteRow, SuiteSummary};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "submod",
    version,
    about = "Monotone submodular maximization over a matroid"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one instance and print a JSON report.
    Run(RunArgs),
    /// Check every algorithm and guarantee on the enumerated small-instance suite.
    Suite(SuiteArgs),
    /// Count oracle queries of msg-det on random instances over an (n, k) grid.
    Complexity(ComplexityArgs),
}

/// `--p` accepts a probability or `auto` (derive from `--x`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SplitP {
    Auto,
    Fixed(f64),
}

impl SplitP {
    pub fn value(self) -> Option<f64> {
        match self {
            SplitP::Auto => None,
            SplitP::Fixed(p) => Some(p),
        }
    }
}

fn parse_p(s: &str) -> Result<SplitP, String> {
    if s.eq_ignore_ascii_case("auto") {
        return Ok(SplitP::Auto);
    }
    let p: f64 = s
        .parse()
        .map_err(|_| format!("expected a number or `auto`, got `{s}`"))?;
    if !(0.0..=1.0).contains(&p) {
        return Err(format!("p must lie in [0, 1], got {p}"));
    }
    Ok(SplitP::Fixed(p))
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub instance: PathBuf,
    /// greedy, split, rrgreedy, rpgreedy, msg or msg-det
    #[arg(long, default_value = "msg-det")]
    pub algorithm: String,
    #[arg(long, default_value_t = submod_core::algorithms::DEFAULT_X)]
    pub x: f64,
    #[arg(long, default_value = "auto", value_parser = parse_p)]
    pub p: SplitP,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also compute the optimum by brute force and report the ratio.
    #[arg(long)]
    pub opt: bool,
    /// Write the report here as well as to standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SuiteArgs {
    #[arg(long, default_value_t = 8)]
    pub max_n: usize,
    #[arg(long, default_value_t = 3)]
    pub max_k: usize,
    /// Directory receiving suite.csv and suite.json.
    #[arg(long, default_value = "suite-report")]
    pub out: PathBuf,
    #[arg(long, default_value_t = submod_core::algorithms::DEFAULT_X)]
    pub x: f64,
    #[arg(long, default_value = "auto", value_parser = parse_p)]
    pub p: SplitP,
    /// Seed for the randomized algorithms' reported runs.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of seeds averaged by the msg mean check (0 disables it).
    #[arg(long, default_value_t = 100)]
    pub msg_seeds: u64,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MatroidArg {
    Uniform,
    Partition,
    Graphic,
}

impl From<MatroidArg> for MatroidKind {
    fn from(m: MatroidArg) -> Self {
        match m {
            MatroidArg::Uniform => MatroidKind::Uniform,
            MatroidArg::Partition => MatroidKind::Partition,
            MatroidArg::Graphic => MatroidKind::Graphic,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FunctionArg {
    Modular,
    Coverage,
    WeightedCoverage,
    ConcaveOfModular,
}

impl From<FunctionArg> for FunctionKind {
    fn from(f: FunctionArg) -> Self {
        match f {
            FunctionArg::Modular => FunctionKind::Modular,
            FunctionArg::Coverage => FunctionKind::Coverage,
            FunctionArg::WeightedCoverage => FunctionKind::WeightedCoverage,
            FunctionArg::ConcaveOfModular => FunctionKind::ConcaveOfModular,
        }
    }
}

#[derive(Debug, Args)]
pub struct ComplexityArgs {
    #[arg(long, value_delimiter = ',', default_value = "20,40,80")]
    pub n_grid: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "4,8")]
    pub k_grid: Vec<usize>,
    /// Seeds 0..seeds per cell.
    #[arg(long, default_value_t = 3)]
    pub seeds: u64,
    #[arg(long, value_enum, default_value = "partition")]
    pub matroid: MatroidArg,
    #[arg(long, value_enum, default_value = "modular")]
    pub function: FunctionArg,
    #[arg(long, default_value_t = submod_core::algorithms::DEFAULT_X)]
    pub x: f64,
    /// Also write the per-run rows as CSV here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::InternalInvariant(_) | Error::Infeasible(_) => EXIT_VIOLATION,
        _ => EXIT_USAGE,
    }
}

/// Failure of a command: a message for standard error and the exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: exit_code(&e),
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

fn thread_pool(jobs: usize) -> Result<rayon::ThreadPool, Failure> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Failure::usage(format!("cannot start {jobs} workers: {e}")))
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn main_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{text}");
            return e.exit_code();
        }
    };
    let result = match cli.command {
        Command::Run(args) => run::cmd_run(&args, stdout),
        Command::Suite(args) => suite::cmd_suite(&args, stdout, stderr),
        Command::Complexity(args) => complexity::cmd_complexity(&args, stdout, stderr),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}
