//! Command-line front end.

mod commands;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flows::BetaSpec;
use crate::matching::MatchConfig;
use crate::preprocess::{PipelineConfig, ResampleMode};

pub use commands::run;

const EXIT_CODES: &str = "Exit codes:
  0  success
  2  input error (unreadable or malformed files, invalid arguments)
  3  numeric error (irregular curve, stability violation, shock, past shock time)
  4  matching failure (no overlap, infeasible DTW band, nothing matched)";

#[derive(Debug, Parser)]
#[command(name = "centroaffine", version, about = "Centro-affine invariants, flows and signature matching of planar curves", after_help = EXIT_CODES)]
pub struct Cli {
    /// JSON file with default settings; flags take precedence over it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Signature (s, kappa, eps) of every contour through the conditioning pipeline.
    Invariants(InvariantsArgs),
    /// Evolve one contour by dC/dt = beta(kappa) C_ss.
    Flow(FlowArgs),
    /// Curvature at time t from kappa_t = kappa kappa_s by characteristics.
    Burgers(BurgersArgs),
    /// Pair the contours of two files and export sample correspondences.
    Match(MatchArgs),
    /// Generate synthetic contours from a JSON spec.
    Synth(SynthArgs),
    /// Estimate a homography from corresponding contour samples.
    Homography(HomographyArgs),
    /// Name the constant-curvature curve with the given curvature.
    Classify(ClassifyArgs),
}

#[derive(Debug, Args)]
pub struct PipelineFlags {
    #[arg(long)]
    pub spline_degree: Option<usize>,
    /// Drop samples with |kappa| above this.
    #[arg(long)]
    pub clip: Option<f64>,
    /// Gaussian smoothing width in samples (0 disables).
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Number of resampled points.
    #[arg(long)]
    pub samples: Option<usize>,
    /// `arc-length` or `k-means`.
    #[arg(long, value_parser = parse_resample)]
    pub resample: Option<ResampleMode>,
}

#[derive(Debug, Args)]
pub struct InvariantsArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub pipeline: PipelineFlags,
    /// Also draw the resampled contours as SVG.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FlowArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Contour id to evolve (default: the first one in the file).
    #[arg(long)]
    pub contour: Option<String>,
    #[arg(long = "T", alias = "t-end")]
    pub t_end: Option<f64>,
    #[arg(long)]
    pub dt: Option<f64>,
    /// `one`, `kappa`, `kappa^N` or `poly:c0,c1,...`.
    #[arg(long, value_parser = parse_beta)]
    pub beta: Option<BetaSpec>,
    #[arg(long)]
    pub out: PathBuf,
    /// Keep every N-th step in the output.
    #[arg(long)]
    pub record_every: Option<usize>,
    /// Print the largest kappa/g drift and fail if it exceeds 1e-3.
    #[arg(long)]
    pub check_conservation: bool,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BurgersArgs {
    /// CSV with columns s,kappa.
    #[arg(long)]
    pub kappa0: PathBuf,
    #[arg(long)]
    pub t: f64,
    #[arg(long)]
    pub out: PathBuf,
    /// Treat the profile as periodic with this period.
    #[arg(long)]
    pub period: Option<f64>,
    /// `upwind`: also run the finite-volume solver and print the difference.
    #[arg(long)]
    pub oracle: Option<Oracle>,
    #[arg(long, default_value_t = 1 << 14)]
    pub cells: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Oracle {
    Upwind,
}

#[derive(Debug, Args)]
pub struct MatchArgs {
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long)]
    pub b: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Minimum-cost assignment instead of greedy.
    #[arg(long)]
    pub optimal: bool,
    #[command(flatten)]
    pub pipeline: PipelineFlags,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(long)]
    pub spec: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct HomographyArgs {
    /// Correspondence CSV (contourA_id,contourB_id,sampleA_idx,sampleB_idx).
    #[arg(long)]
    pub pairs: PathBuf,
    /// Contour files holding the A and B samples.
    #[arg(long, num_args = 2, value_names = ["PTS_A", "PTS_B"])]
    pub points: Vec<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub kappa: f64,
    /// Orientation sign, 1 or -1.
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub eps: i8,
}

/// Defaults read from `--config`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CliConfig {
    pub pipeline: PipelineConfig,
    pub matching: MatchConfig,
    pub flow: FlowConfig,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FlowConfig {
    pub t_end: f64,
    pub dt: f64,
    pub beta: BetaSpec,
    pub record_every: usize,
    pub max_kappa_gradient: f64,
    pub conservation_limit: f64,
}

impl Default for FlowConfig {
    fn default() -> Self {
        FlowConfig {
            t_end: 1.0,
            dt: 1e-3,
            beta: BetaSpec::ConstantOne,
            record_every: 100,
            max_kappa_gradient: 1e3,
            conservation_limit: 1e-3,
        }
    }
}

impl CliConfig {
    pub fn load(path: Option<&Path>) -> Result<CliConfig> {
        let Some(path) = path else { return Ok(CliConfig::default()) };
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| Error::Parse { line: e.line() as u64, column: e.column(), message: e.to_string() })
    }
}

impl PipelineFlags {
    pub fn apply(&self, cfg: &mut PipelineConfig) {
        if let Some(v) = self.spline_degree {
            cfg.degree = v;
        }
        if let Some(v) = self.clip {
            cfg.clip = v;
        }
        if let Some(v) = self.sigma {
            cfg.sigma = v;
        }
        if let Some(v) = self.samples {
            cfg.samples = v;
        }
        if let Some(v) = self.resample {
            cfg.resample = v;
        }
    }
}

fn parse_resample(s: &str) -> std::result::Result<ResampleMode, String> {
    match s {
        "arc-length" | "arclength" => Ok(ResampleMode::ArcLength),
        "k-means" | "kmeans" => Ok(ResampleMode::KMeans),
        _ => Err(format!("unknown resampling mode '{s}' (expected arc-length or k-means)")),
    }
}

pub fn parse_beta(s: &str) -> std::result::Result<BetaSpec, String> {
    let s = s.trim();
    if s == "one" || s == "1" {
        return Ok(BetaSpec::ConstantOne);
    }
    if s == "kappa" {
        return Ok(BetaSpec::PowerOfKappa { exponent: 1 });
    }
    if let Some(e) = s.strip_prefix("kappa^") {
        return e.parse().map(|exponent| BetaSpec::PowerOfKappa { exponent }).map_err(|_| format!("bad exponent in '{s}'"));
    }
    if let Some(list) = s.strip_prefix("poly:") {
        let coeffs = list.split(',').map(|c| c.trim().parse::<f64>()).collect::<std::result::Result<Vec<_>, _>>();
        return match coeffs {
            Ok(c) if !c.is_empty() && c.iter().all(|v| v.is_finite()) => Ok(BetaSpec::PolynomialInKappa { coeffs: c }),
            _ => Err(format!("bad coefficients in '{s}'")),
        };
    }
    Err(format!("unknown speed '{s}' (expected one, kappa, kappa^N or poly:c0,c1,...)"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn beta_parsing() {
        assert_eq!(parse_beta("one").unwrap(), BetaSpec::ConstantOne);
        assert_eq!(parse_beta("kappa^2").unwrap(), BetaSpec::PowerOfKappa { exponent: 2 });
        assert_eq!(parse_beta("poly:1,0.5").unwrap(), BetaSpec::PolynomialInKappa { coeffs: vec![1.0, 0.5] });
        assert!(parse_beta("cubic").is_err());
    }

    #[test]
    fn config_precedence() {
        let mut cfg: CliConfig = serde_json::from_str(r#"{"pipeline":{"clip":20,"sigma":1.5}}"#).unwrap();
        let flags = PipelineFlags { spline_degree: None, clip: Some(50.0), sigma: None, samples: None, resample: None };
        flags.apply(&mut cfg.pipeline);
        assert_eq!(cfg.pipeline.clip, 50.0);
        assert_eq!(cfg.pipeline.sigma, 1.5);
        assert_eq!(cfg.pipeline.samples, PipelineConfig::default().samples);
    }
}
