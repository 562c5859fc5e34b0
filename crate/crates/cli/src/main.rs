//! `seit`: capacity regions, sum-capacity curves and feedback simulations
//! for the two-user Gaussian MAC with an energy harvester.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "seit",
    version,
    about = "Information-energy regions of the Gaussian MAC with an energy harvester"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Pareto boundary samples of the information-energy capacity region.
    Region(RegionArgs),
    /// Sum-capacity with and without feedback as a function of the energy rate.
    Sumcap(SumcapArgs),
    /// Energy gain of feedback at the no-feedback sum-capacity over an SNR sweep.
    Ratio(RatioArgs),
    /// Monte Carlo run of the feedback coding scheme.
    Simulate(SimulateArgs),
    /// Energy outage estimate at several blocklengths.
    Outage(OutageArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct ChannelSource {
    /// Receiver and harvester SNRs as `S11,S12,S21,S22`.
    #[arg(long, value_parser = parse_floats::<4>, allow_hyphen_values = true)]
    pub snr: Option<[f64; 4]>,
    /// Channel file with `key = value` lines (h11, h12, h21, h22, p1, p2).
    #[arg(long)]
    pub channel: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RegionArgs {
    #[command(flatten)]
    pub source: ChannelSource,
    /// Sample the region with feedback instead of without.
    #[arg(long)]
    pub feedback: bool,
    /// Grid points per operating-point axis.
    #[arg(long, default_value_t = 64)]
    pub res: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Also verify that every no-feedback sample is dominated by a feedback
    /// sample; exits with status 1 otherwise.
    #[arg(long)]
    pub check_inclusion: bool,
}

#[derive(Debug, Args)]
pub struct SumcapArgs {
    #[command(flatten)]
    pub source: ChannelSource,
    /// Uniform energy-rate points (regime edges are added).
    #[arg(long, default_value_t = 401)]
    pub points: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct RatioArgs {
    /// Asymmetry factors of transmitter 1 relative to transmitter 2.
    #[arg(long, value_delimiter = ',', default_values_t = [1.0, 2.0, 10.0])]
    pub asym: Vec<f64>,
    #[arg(long, default_value_t = 1e-6)]
    pub snr_min: f64,
    #[arg(long, default_value_t = 1e6)]
    pub snr_max: f64,
    #[arg(long, default_value_t = 10)]
    pub per_decade: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
#[group(id = "rate_choice", required = true, multiple = false)]
pub struct RateChoice {
    /// Rates as this fraction of each transmitter's achievable rate.
    #[arg(long)]
    pub rate_frac: Option<f64>,
    /// Explicit rates `R1,R2` in bits per channel use.
    #[arg(long, value_parser = parse_floats::<2>)]
    pub rates: Option<[f64; 2]>,
}

#[derive(Debug, Args)]
pub struct SchemeArgs {
    #[command(flatten)]
    pub source: ChannelSource,
    /// Information power fractions `beta1,beta2`.
    #[arg(long, value_parser = parse_floats::<2>, default_value = "1,1")]
    pub beta: [f64; 2],
    #[command(flatten)]
    pub rates: RateChoice,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, env = "SEIT_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Energy-rate target; defaults to the expected rate of the scheme.
    #[arg(long)]
    pub target_b: Option<f64>,
    /// Outage slack; defaults to 1% of the target.
    #[arg(long)]
    pub epsilon: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub scheme: SchemeArgs,
    /// Blocklength.
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    /// Report path (JSON); stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OutageArgs {
    #[command(flatten)]
    pub scheme: SchemeArgs,
    /// Blocklengths to sweep.
    #[arg(long, value_delimiter = ',', default_values_t = [100usize, 1000, 10000])]
    pub ns: Vec<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Exactly `N` comma-separated numbers.
fn parse_floats<const N: usize>(s: &str) -> Result<[f64; N], String> {
    let vals = s
        .split(',')
        .map(|v| v.trim().parse::<f64>().map_err(|e| format!("`{v}`: {e}")))
        .collect::<Result<Vec<f64>, String>>()?;
    vals.try_into()
        .map_err(|v: Vec<f64>| format!("expected {N} comma-separated values, got {}", v.len()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Region(a) => commands::region(&a),
        Command::Sumcap(a) => commands::sumcap(&a),
        Command::Ratio(a) => commands::ratio(&a),
        Command::Simulate(a) => commands::simulate(&a),
        Command::Outage(a) => commands::outage(&a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &CliError) -> u8 {
    use seit_core::Error as E;
    match e {
        CliError::NotIncluded(_) => 1,
        CliError::Core(E::InfeasibleEnergy { .. }) => 3,
        CliError::Core(E::Io(_) | E::Csv(_) | E::Json(_)) => 4,
        CliError::Core(E::Divergence { .. }) => 1,
        CliError::Core(_) => 2,
    }
}
