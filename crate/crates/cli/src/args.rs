use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "benford", version, about = "Benford's-law verdicts for linear recurrences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Float type for the spectral and simulation passes.
    #[arg(long, global = true, value_enum, env = "BENFORD_PRECISION", default_value = "f64")]
    pub precision: Precision,

    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,

    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Structure, spectrum, verdict and a short simulation.
    Analyze(AnalyzeArgs),
    /// First-digit statistics of the sequence or of a polynomial subsequence.
    Simulate(SimulateArgs),
    /// Bases in which the verdict holds, with the exceptional set up to --max-base.
    Bases(BasesArgs),
    /// The family x^k - m(x^{k-1} + ... + 1) for k = 2..=kmax.
    Pisot(PisotArgs),
    /// Primes at the indices l, l^2, ..., l^nmax.
    Primes(PrimesArgs),
}

/// A recurrence given inline or read from a file (plain-text record or JSON).
#[derive(Debug, Clone, Args)]
pub struct RecurrenceArgs {
    /// Coefficients c_0,...,c_{k-1}, as integers, p/q or exact decimals.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "input")]
    pub coeffs: Option<String>,

    /// Initial values a_1,...,a_k.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "input")]
    pub init: Option<String>,

    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub recurrence: RecurrenceArgs,

    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    pub base: Option<u64>,

    /// Terms simulated for the empirical section.
    #[arg(long = "N", default_value_t = 10_000)]
    pub n: usize,

    #[arg(long, default_value_t = benford_core::classify::DEFAULT_MAX_BASE, value_parser = clap::value_parser!(u64).range(3..))]
    pub max_base: u64,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub recurrence: RecurrenceArgs,

    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(2..))]
    pub base: u64,

    #[arg(long = "N", default_value_t = 10_000)]
    pub n: usize,

    /// Sample a_{Q(1)}, a_{Q(2)}, ... for an integer polynomial such as "n^2+1".
    #[arg(long)]
    pub index_poly: Option<String>,

    /// Points of the CDF table in CSV output.
    #[arg(long, default_value_t = 100)]
    pub cdf_points: usize,
}

#[derive(Debug, Clone, Args)]
pub struct BasesArgs {
    #[command(flatten)]
    pub recurrence: RecurrenceArgs,

    #[arg(long, default_value_t = benford_core::classify::DEFAULT_MAX_BASE, value_parser = clap::value_parser!(u64).range(3..))]
    pub max_base: u64,

    /// Also decide log_b rho for this base.
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    pub base: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct PisotArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub m: u32,

    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(3..=64))]
    pub kmax: u64,
}

#[derive(Debug, Clone, Args)]
pub struct PrimesArgs {
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(2..))]
    pub ell: u64,

    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..))]
    pub nmax: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Precision {
    F32,
    F64,
    /// Double-double, about 106 significand bits.
    Extended,
}

impl Precision {
    pub fn name(self) -> &'static str {
        match self {
            Precision::F32 => "f32",
            Precision::F64 => "f64",
            Precision::Extended => "extended",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}
