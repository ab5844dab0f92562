use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "truncvote",
    version,
    about = "Voting rules on top-k truncated ballots"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the winner of a rule on a profile file.
    Winner {
        /// Rule string, e.g. `borda`, `copeland@k=2`, `harmonic@k=1:zero`.
        #[arg(long)]
        rule: String,
        /// PrefLib file (SOC or SOI).
        #[arg(long)]
        profile: PathBuf,
        #[command(flatten)]
        tiebreak: TiebreakArg,
    },
    /// Cut every ballot of a profile file to its first k candidates.
    Truncate {
        #[arg(long)]
        profile: PathBuf,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Draw a complete profile from a Mallows model centred on 1 > 2 > … > m.
    Sample {
        #[arg(long)]
        m: usize,
        /// Dispersion in (0, 1]; 1 is impartial culture.
        #[arg(long)]
        phi: f64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Worst-case score ratio between a rule and its top-k version.
    Bounds {
        /// Scoring rule (completion policy sets s*), `maximin`, or `copeland`.
        #[arg(long)]
        rule: String,
        #[arg(long, required_unless_present = "table")]
        m: Option<usize>,
        #[arg(long, required_unless_present = "table")]
        k: Option<usize>,
        /// Print a CSV table over every m in `--m-min..=--m-max` and every
        /// admissible k, with the ratio attained by the explicit construction.
        #[arg(long)]
        table: bool,
        #[arg(long, default_value_t = 4)]
        m_min: usize,
        #[arg(long, default_value_t = 8)]
        m_max: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Write the worst-case profile for a rule as a PrefLib file.
    Adversarial {
        #[arg(long)]
        rule: String,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Monte-Carlo experiments; output is CSV.
    #[command(subcommand)]
    Experiment(Experiment),
    /// Validate a PrefLib file and print a summary.
    ParseCheck {
        #[arg(long)]
        profile: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum Experiment {
    /// Fraction of trials where the top-k rule finds the true winner.
    Success(ExperimentArgs),
    /// Mean and maximum score ratio between true and top-k winners.
    Ratio(ExperimentArgs),
    /// Smallest k that found the true winner in every trial.
    MinK(ExperimentArgs),
    /// Success rate on sub-elections resampled from a real election.
    RealSweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Mallows,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SamplingArg {
    Without,
    With,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    /// Synthetic profile model; give either this or `--data`.
    #[arg(long, conflicts_with = "data", required_unless_present = "data")]
    pub model: Option<Model>,
    #[arg(long, requires = "model")]
    pub m: Option<usize>,
    #[arg(long, requires = "model")]
    pub phi: Option<f64>,
    #[arg(long, requires = "model")]
    pub n: Option<u64>,
    /// PrefLib file to resample from.
    #[arg(long)]
    pub data: Option<PathBuf>,
    /// Voters per resampled sub-election.
    #[arg(long, requires = "data")]
    pub n_star: Option<u64>,
    #[arg(long, value_enum, default_value_t = SamplingArg::Without)]
    pub sampling: SamplingArg,
    /// Truncation depths, comma separated; defaults to 1..m−1.
    #[arg(long, value_delimiter = ',')]
    pub k: Vec<usize>,
    /// Rule without a depth; repeat for several rules.
    #[arg(long = "rule", required = true)]
    pub rules: Vec<String>,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long)]
    pub seed: u64,
    /// Worker threads; 0 picks one per core. Does not affect the output.
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    #[command(flatten)]
    pub tiebreak: TiebreakArg,
    #[command(flatten)]
    pub out: OutArg,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub data: PathBuf,
    /// Sub-election sizes, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n_star: Vec<u64>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub k: Vec<usize>,
    #[arg(long = "rule", required = true)]
    pub rules: Vec<String>,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = SamplingArg::Without)]
    pub sampling: SamplingArg,
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    #[command(flatten)]
    pub tiebreak: TiebreakArg,
    #[command(flatten)]
    pub out: OutArg,
}

#[derive(Debug, Args)]
pub struct TiebreakArg {
    /// Candidate priority as 0-based ids, best first (default 0,1,…,m−1).
    #[arg(long = "tiebreak", value_delimiter = ',')]
    pub priority: Option<Vec<usize>>,
}

#[derive(Debug, Args)]
pub struct OutArg {
    /// Write to this file instead of stdout; nothing is written on failure.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
