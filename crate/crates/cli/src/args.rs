//! Argument definitions, the optional `key = value` config file, and grid
//! parsing. Flags always override config values.

use std::collections::HashMap;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

/// Errors split by exit code: usage/parameter problems exit 1, numerical
/// or validation failures exit 2.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical(String),
}

impl From<flamefront_core::Error> for CliError {
    fn from(err: flamefront_core::Error) -> Self {
        match err {
            flamefront_core::Error::InvalidParameter { .. } => CliError::Usage(err.to_string()),
            other => CliError::Numerical(other.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(
    name = "flamefront",
    version,
    about = "Traveling-front solver for ignition-temperature combustion with fractional reaction order",
    after_help = "Environment:\n  FLAMEFRONT_MAX_X   ceiling for bracket expansion of the root solve (default 1e6)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Solve one front: sigma*, c*, R*, a and a residual report
    Solve(SolveArgs),
    /// Sweep a parameter grid into CSV, one record per (theta, lambda, alpha)
    Sweep(SweepArgs),
    /// Emit sampled temperature/reactant profiles as CSV
    Profile(ProfileArgs),
    /// Compare the solver against closed-form asymptotic regimes
    CompareAsymptotics(CompareArgs),
    /// Emit the phase-plane polar trace with its monotonicity summary
    Phase(PhaseArgs),
}

#[derive(Args)]
pub struct SolveArgs {
    /// Ignition temperature, in (0,1)
    #[arg(long)]
    pub theta: Option<f64>,
    /// Inverse Lewis number, positive
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Reaction order, within [0.005, 0.995]
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Relative tolerance on sigma* (default 1e-10)
    #[arg(long)]
    pub tol: Option<f64>,
    /// Exit 2 when any residual exceeds this (default 1e-6)
    #[arg(long)]
    pub max_residual: Option<f64>,
    /// Output format: csv or json (default csv)
    #[arg(long)]
    pub format: Option<String>,
    /// Write output here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Config file of `key = value` lines mirroring the long flags
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Args)]
pub struct SweepArgs {
    /// Comma list or start:stop:count range (default 0.25,0.5,0.75)
    #[arg(long)]
    pub theta_grid: Option<String>,
    /// Comma list or start:stop:count range (default 0.2,1,5)
    #[arg(long)]
    pub lambda_grid: Option<String>,
    /// Comma list or start:stop:count range (default 0.25,0.5,0.75)
    #[arg(long)]
    pub alpha_grid: Option<String>,
    /// Output CSV path (required)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads for tuple solves (default: all cores)
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Relative tolerance on sigma* (default 1e-10)
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Args)]
pub struct ProfileArgs {
    #[arg(long)]
    pub theta: Option<f64>,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Left edge of the table (default -R* - 5/c*)
    #[arg(long)]
    pub xi_min: Option<f64>,
    /// Points across the reaction zone, at least 16 (default 64)
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub max_residual: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Args)]
pub struct CompareArgs {
    #[arg(long)]
    pub theta: Option<f64>,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Comma list of regimes: theta-near-one, theta-small, alpha-zero,
    /// alpha-one (default: every regime valid at the given theta)
    #[arg(long)]
    pub regimes: Option<String>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Args)]
pub struct PhaseArgs {
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Depth of the trace; the trajectory is computed on [-|reach|, 0]
    #[arg(long)]
    pub reach: Option<f64>,
    /// Series start offset: a positive number or `auto` (default 1e-4)
    #[arg(long)]
    pub seed_offset: Option<String>,
    /// Exit 2 when the largest positive angle increment exceeds this
    /// (default 1e-8)
    #[arg(long)]
    pub angle_tol: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Parses a `key = value` config file; `#` starts a comment, keys use the
/// long flag spelling (`theta-grid`, `max-residual`, ...).
pub fn load_config(path: &PathBuf) -> CliResult<HashMap<String, String>> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    let mut map = HashMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::Usage(format!(
                "config {}:{}: expected `key = value`, got `{raw}`",
                path.display(),
                lineno + 1
            )));
        };
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

/// Fills an unset option from the config map, parsing the stored string.
pub fn fill<T: std::str::FromStr>(
    slot: &mut Option<T>,
    map: &HashMap<String, String>,
    key: &str,
) -> CliResult<()> {
    if slot.is_none() {
        if let Some(raw) = map.get(key) {
            let parsed = raw.parse::<T>().map_err(|_| {
                CliError::Usage(format!("config key `{key}`: cannot parse `{raw}`"))
            })?;
            *slot = Some(parsed);
        }
    }
    Ok(())
}

/// A required numeric flag after config merge.
pub fn require(value: Option<f64>, flag: &str) -> CliResult<f64> {
    value.ok_or_else(|| CliError::Usage(format!("missing required flag --{flag}")))
}

/// Grid spec: either a comma list (`0.2,1,5`) or an inclusive range
/// `start:stop:count`.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>, String> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Err("empty grid spec".to_string());
    }
    if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("range spec `{spec}` must be start:stop:count"));
        }
        let start: f64 = parts[0]
            .trim()
            .parse()
            .map_err(|_| format!("bad start in `{spec}`"))?;
        let stop: f64 = parts[1]
            .trim()
            .parse()
            .map_err(|_| format!("bad stop in `{spec}`"))?;
        let count: usize = parts[2]
            .trim()
            .parse()
            .map_err(|_| format!("bad count in `{spec}`"))?;
        if count == 0 {
            return Err(format!("count must be positive in `{spec}`"));
        }
        if count == 1 {
            return Ok(vec![start]);
        }
        let step = (stop - start) / (count - 1) as f64;
        return Ok((0..count).map(|i| start + step * i as f64).collect());
    }
    spec.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<f64>()
                .map_err(|_| format!("bad grid value `{tok}`"))
        })
        .collect()
}
