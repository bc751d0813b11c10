mod commands;
mod output;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use coboson::DEFAULT_ZERO_THRESHOLD;

/// Exit codes: 0 ok, 1 verification failure, 2 input error, 3 nothing to report.
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_NO_ROWS: u8 = 3;

#[derive(Parser)]
#[command(name = "coboson", version, about = "How bosonic is a pair of entangled fermions?")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Metric table for a Schmidt spectrum
    Analyze(AnalyzeArgs),
    /// Metric table for a gridded two-particle wavefunction
    Wavefunction(WavefunctionArgs),
    /// Trapped hydrogen: purity and how many atoms stay bosonic
    Hydrogen(HydrogenArgs),
    /// Cross-check the chi table against brute-force oracles
    Verify(VerifyArgs),
    /// One report row per value of M, z or b
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write here instead of stdout; relative paths resolve against $COBOSON_OUTPUT_DIR when set
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
#[group(id = "source", required = true, multiple = false)]
pub struct SourceArgs {
    /// M equal Schmidt coefficients
    #[arg(long, value_name = "M", group = "source")]
    pub uniform: Option<usize>,
    /// Geometric spectrum (1 - z) z^p
    #[arg(long, value_name = "Z", group = "source")]
    pub geometric: Option<f64>,
    /// Spectrum file: JSON array, {"lambdas": [...]} or one value per line
    #[arg(long, value_name = "FILE", group = "source")]
    pub spectrum: Option<PathBuf>,
    /// Random Dirichlet spectrum with M modes
    #[arg(long, value_name = "M", group = "source")]
    pub dirichlet: Option<usize>,
}

#[derive(Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Mass left out of a geometric spectrum
    #[arg(long, default_value_t = 1e-12)]
    pub tail_cutoff: f64,
    #[arg(long, default_value_t = 1.0)]
    pub concentration: f64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Coefficients at or below this count as zero (spectrum files)
    #[arg(long, default_value_t = DEFAULT_ZERO_THRESHOLD)]
    pub zero_threshold: f64,
    /// Largest N to report [default: min(M - 1, 64)]
    #[arg(long)]
    pub n_max: Option<usize>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args)]
pub struct WavefunctionArgs {
    /// Grid header (JSON)
    pub file: PathBuf,
    #[arg(long, default_value_t = DEFAULT_ZERO_THRESHOLD)]
    pub zero_threshold: f64,
    #[arg(long)]
    pub n_max: Option<usize>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args)]
pub struct HydrogenArgs {
    /// Trap width in Bohr radii
    #[arg(long = "b", value_name = "B_OVER_A0")]
    pub b: f64,
    /// Allowed drop of the chi ratio below 1
    #[arg(long, default_value_t = 0.1)]
    pub delta: f64,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Largest mode count for the oracle checks (Fock matrices stop at 6)
    #[arg(long, default_value_t = 6)]
    pub m_max: usize,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Print the full report as JSON
    #[arg(long)]
    pub json: bool,
    #[arg(long, hide = true)]
    pub corrupt_chi: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepParameter {
    /// Mode count of a uniform (or Dirichlet) spectrum
    M,
    /// Ratio of a geometric spectrum
    Z,
    /// Hydrogen trap width b/a0
    B,
}

#[derive(Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub vary: SweepParameter,
    #[arg(long)]
    pub from: f64,
    #[arg(long)]
    pub to: f64,
    /// Number of evenly spaced values
    #[arg(long, default_value_t = 10)]
    pub points: usize,
    /// N at which the metrics are reported (M and z sweeps)
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    /// With --vary m, draw Dirichlet spectra instead of uniform ones
    #[arg(long)]
    pub concentration: Option<f64>,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-12)]
    pub tail_cutoff: f64,
    /// For b sweeps
    #[arg(long, default_value_t = 0.1)]
    pub delta: f64,
    #[command(flatten)]
    pub out: OutputArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze(args) => commands::analyze(args),
        Command::Wavefunction(args) => commands::wavefunction(args),
        Command::Hydrogen(args) => commands::hydrogen(args),
        Command::Verify(args) => commands::verify(args),
        Command::Sweep(args) => sweep::run(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
