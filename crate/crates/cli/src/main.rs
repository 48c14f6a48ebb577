//! `tqft`: dimension tables, representation bundles and finite quotients
//! from the command line.
//!
//! Exit codes: 0 all requested checks passed, 1 some check failed (the
//! failures go to stderr as TSV), 2 usage, 3 I/O, 4 invalid configuration,
//! 5 computation error.

mod commands;
mod config;
mod error;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use tqft_core::blocks::Method;

use error::{CliError, CliResult, EXIT_CHECKS_FAILED, EXIT_OK, EXIT_USAGE};
use report::Report;

#[derive(Debug, Parser)]
#[command(name = "tqft", version, about = "SO(3) TQFT conformal blocks, quantum representations and their finite quotients")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Emit JSON instead of TSV.
    #[arg(long, global = true)]
    pub json: bool,
    /// Omit the timestamp line and wall-clock times.
    #[arg(long, global = true)]
    pub no_timestamp: bool,
    /// Directory for bundles written without an explicit path.
    #[arg(long, global = true, env = "TQFT_OUT_DIR", value_name = "DIR")]
    pub out_dir: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub report: Option<PathBuf>,
    /// key=value file of flags; explicit flags take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimension tables by enumeration, recursion, closed form and Verlinde.
    Dims(DimsArgs),
    /// The comparison, growth and block decomposition inequalities.
    VerifyLemmas(LemmaArgs),
    /// Primes p for which 1 + 8 dim W_{3,p,(p-3)} is a perfect square.
    SquareScan(ScanArgs),
    /// Build a representation bundle.
    BuildRep(BuildArgs),
    /// Relations, Hermitian invariance, conjugation symmetry and p-th powers.
    CheckRep(CheckArgs),
    /// Spectra of point-pushing words and bounded searches.
    PushExplore(PushArgs),
    /// Reduce a bundle modulo a prime ideal.
    Reduce(ReduceArgs),
    /// Order of a finite matrix group.
    Closure(ClosureArgs),
    /// Compare two generated subgroups and test normality.
    CompareImages(CompareArgs),
    /// Parse and re-serialize a file produced by this tool.
    Roundtrip(RoundtripArgs),
}

pub const SUBCOMMANDS: [&str; 10] = [
    "dims",
    "verify-lemmas",
    "square-scan",
    "build-rep",
    "check-rep",
    "push-explore",
    "reduce",
    "closure",
    "compare-images",
    "roundtrip",
];

#[derive(Debug, Args)]
pub struct DimsArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub g: Vec<usize>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub p: Vec<u64>,
    /// Boundary colors, comma separated; repeat for several tuples, `-` for none.
    #[arg(long = "label", value_name = "COLORS")]
    pub labels: Vec<String>,
    /// Every tuple of at most two colors.
    #[arg(long, conflicts_with = "labels")]
    pub all_labels: bool,
    #[arg(long, value_delimiter = ',')]
    pub methods: Vec<Method>,
    /// Also write the table as TSV.
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LemmaArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub p: Vec<u64>,
    #[arg(long, default_value_t = 4)]
    pub gmax: usize,
    /// Level at which to evaluate dim W_3 / (dim W_2)^2.
    #[arg(long)]
    pub ratio_p: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long)]
    pub max: u64,
}

#[derive(Debug, Args)]
pub struct RepArgs {
    /// Surface, e.g. torus1(0), torus2(2,4), sphere(2,2,2,4), genus2, genus2pt(4).
    #[arg(long)]
    pub spec: String,
    #[arg(long)]
    pub p: u64,
    /// `unitary` or an odd exponent t with A = A0^t.
    #[arg(long, default_value = "unitary")]
    pub root: String,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[command(flatten)]
    pub rep: RepArgs,
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Repeat for several surfaces.
    #[arg(long = "spec")]
    pub specs: Vec<String>,
    #[arg(long, value_delimiter = ',')]
    pub p: Vec<u64>,
    #[arg(long, default_value = "unitary")]
    pub root: String,
    /// Check a stored bundle against a rebuild instead.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["specs", "p"])]
    pub bundle: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PushArgs {
    #[command(flatten)]
    pub rep: RepArgs,
    /// Word in the named loops, e.g. "x y^-1"; repeatable.
    #[arg(long)]
    pub word: Vec<String>,
    /// Search freely reduced words up to this length for an infinite-order
    /// element and a non-scalar commutator.
    #[arg(long)]
    pub search: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SourceArgs {
    /// A documented cell; sets spec, p, q, modulus index, mode and cap.
    #[arg(long, conflicts_with_all = ["spec", "residue"])]
    pub cell: Option<String>,
    #[arg(long, requires = "p")]
    pub spec: Option<String>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long, default_value = "unitary")]
    pub root: String,
    /// A prime, or `auto` for the smallest split prime.
    #[arg(long, default_value = "auto")]
    pub q: String,
    #[arg(long, default_value_t = 0)]
    pub modulus_index: usize,
    /// A residue bundle written by `reduce`.
    #[arg(long, value_name = "FILE", conflicts_with = "spec")]
    pub residue: Option<PathBuf>,
    /// Work modulo scalars.
    #[arg(long)]
    pub projective: bool,
    #[arg(long)]
    pub cap: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    #[arg(long, requires = "p", conflicts_with = "bundle")]
    pub spec: Option<String>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long, default_value = "unitary")]
    pub root: String,
    #[arg(long, value_name = "FILE")]
    pub bundle: Option<PathBuf>,
    #[arg(long, default_value = "auto")]
    pub q: String,
    #[arg(long, default_value_t = 0)]
    pub modulus_index: usize,
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClosureArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// `generators`, `loops` or a comma-separated list of matrix names.
    #[arg(long, default_value = "generators")]
    pub gens: String,
    /// Transvection generators of SL(2, q) instead of a representation.
    #[arg(long, value_name = "Q", conflicts_with_all = ["cell", "spec", "residue"])]
    pub sl2: Option<u64>,
    /// Count elements by order.
    #[arg(long)]
    pub histogram: bool,
    /// Fail unless the closure completes with this order.
    #[arg(long)]
    pub expect_order: Option<u64>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, default_value = "loops")]
    pub a: String,
    #[arg(long, default_value = "generators")]
    pub b: String,
    /// Also test that <A> is normalized by the generators of B.
    #[arg(long)]
    pub normality: bool,
}

#[derive(Debug, Args)]
pub struct RoundtripArgs {
    pub file: PathBuf,
}

/// Settings shared by every subcommand.
pub struct Ctx {
    pub out_dir: PathBuf,
    pub timing: bool,
}

impl Ctx {
    /// Wall-clock seconds since `start`, or `-` in deterministic mode.
    pub fn elapsed(&self, start: Instant) -> String {
        if self.timing {
            format!("{:.3}", start.elapsed().as_secs_f64())
        } else {
            "-".to_string()
        }
    }

    pub fn write(&self, path: &std::path::Path, text: &str) -> CliResult<()> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
        }
        std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
    }
}

fn run(cli: &Cli) -> CliResult<Report> {
    let ctx = Ctx { out_dir: cli.common.out_dir.clone().unwrap_or_else(|| PathBuf::from(".")), timing: !cli.common.no_timestamp };
    match &cli.command {
        Command::Dims(a) => commands::blocks::dims(a, &ctx),
        Command::VerifyLemmas(a) => commands::blocks::verify_lemmas(a),
        Command::SquareScan(a) => commands::blocks::square_scan(a),
        Command::BuildRep(a) => commands::rep::build_rep(a, &ctx),
        Command::CheckRep(a) => commands::rep::check_rep(a),
        Command::PushExplore(a) => commands::rep::push_explore(a),
        Command::Reduce(a) => commands::quotients::reduce(a, &ctx),
        Command::Closure(a) => commands::quotients::closure(a, &ctx),
        Command::CompareImages(a) => commands::quotients::compare_images(a, &ctx),
        Command::Roundtrip(a) => commands::roundtrip::roundtrip(a),
    }
}

fn emit(cli: &Cli, report: &Report) -> CliResult<()> {
    let timestamp = (!cli.common.no_timestamp)
        .then(|| SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0));
    let text = if cli.common.json { report.to_json(timestamp) } else { report.to_tsv(timestamp) };
    match &cli.common.report {
        Some(path) => Ctx { out_dir: PathBuf::new(), timing: false }.write(path, &text),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::Io(format!("stdout: {e}"))),
    }
}

fn main() -> ExitCode {
    let args = match config::merge(std::env::args_os().collect(), &SUBCOMMANDS) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("tqft: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = run(&cli).and_then(|r| emit(&cli, &r).map(|()| r));
    match result {
        Ok(r) if r.passed() => ExitCode::from(EXIT_OK),
        Ok(r) => {
            eprint!("{}", r.failures_tsv());
            ExitCode::from(EXIT_CHECKS_FAILED)
        }
        Err(e) => {
            eprintln!("tqft: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
