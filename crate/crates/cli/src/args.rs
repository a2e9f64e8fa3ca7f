use std::path::PathBuf;

use clap::{Parser, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Beam pattern of the rotated array against the unrotated one.
    Pattern,
    /// Closed-form full-gain feasibility.
    Analyze,
    /// Rotation search.
    Optimize,
    /// Random-interferer sweep over K.
    Montecarlo,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Pattern => "pattern",
            Command::Analyze => "analyze",
            Command::Optimize => "optimize",
            Command::Montecarlo => "montecarlo",
        }
    }
}

/// Null steering with a rotatable uniform linear array.
///
/// Angles are in degrees. Flags override values read from `--config`.
#[derive(Debug, Parser)]
#[command(name = "raa-nullsteer", version)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,

    /// Flat `key = value` file using the long flag names as keys.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Number of elements.
    #[arg(long)]
    pub n: Option<usize>,
    /// Element spacing in wavelengths.
    #[arg(long)]
    pub spacing: Option<f64>,
    /// Element pattern: iso or cos.
    #[arg(long)]
    pub pattern: Option<String>,
    /// Cosine pattern exponent.
    #[arg(long)]
    pub p: Option<f64>,
    /// Desired direction.
    #[arg(long, allow_hyphen_values = true)]
    pub theta0: Option<f64>,
    /// Comma-separated interference directions (empty for none).
    #[arg(long, allow_hyphen_values = true)]
    pub interferers: Option<String>,
    /// Fixed rotation `alpha,beta,gamma` for `pattern`.
    #[arg(long, allow_hyphen_values = true)]
    pub arv: Option<String>,

    /// Grid points per rotation angle.
    #[arg(long)]
    pub q: Option<usize>,
    #[arg(long)]
    pub rounds: Option<usize>,
    #[arg(long = "gs-iters")]
    pub gs_iters: Option<usize>,
    #[arg(long)]
    pub candidates: Option<usize>,
    #[arg(long = "max-shift")]
    pub max_shift: Option<usize>,
    #[arg(long)]
    pub mu: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,

    /// Monte-Carlo trials per K.
    #[arg(long)]
    pub trials: Option<usize>,
    /// Half-open interferer-count range `a:b`.
    #[arg(long = "k-range")]
    pub k_range: Option<String>,
    /// Pattern sweep step.
    #[arg(long)]
    pub step: Option<f64>,
    /// Pattern axis: signed for [-180, 180], positive for [0, 360].
    #[arg(long)]
    pub axis: Option<String>,

    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Comma-separated subset of csv,json,svg.
    #[arg(long)]
    pub emit: Option<String>,
}
