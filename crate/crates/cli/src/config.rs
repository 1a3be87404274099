use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

/// Evenly spaced `steps` points from `min` to `max` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaGrid {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl LambdaGrid {
    pub fn points(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.min];
        }
        let width = self.max - self.min;
        (0..self.steps)
            .map(|i| if i + 1 == self.steps { self.max } else { self.min + width * i as f64 / (self.steps - 1) as f64 })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub lambda_grid: LambdaGrid,
    pub phi_list: Vec<f64>,
    pub eta_list: Vec<f64>,
    pub n_max: usize,
    pub output_path: PathBuf,
    pub format: OutputFormat,
    pub include_tmss_baseline: bool,
    /// Fill the wall-time column. Off by default so that output files are
    /// reproducible byte for byte.
    pub timing: bool,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        let g = &self.lambda_grid;
        for (name, v) in [("lambda-min", g.min), ("lambda-max", g.max)] {
            if !v.is_finite() || !(0.0..1.0).contains(&v) {
                return Err(CliError::Usage(format!("{name} must lie in [0, 1), got {v}")));
            }
        }
        if g.min > g.max {
            return Err(CliError::Usage(format!("lambda-min {} exceeds lambda-max {}", g.min, g.max)));
        }
        if g.steps < 1 {
            return Err(CliError::Usage("lambda-steps must be at least 1".into()));
        }
        if self.n_max < 2 {
            return Err(CliError::Usage(format!("nmax must be at least 2, got {}", self.n_max)));
        }
        if self.phi_list.is_empty() || self.eta_list.is_empty() {
            return Err(CliError::Usage("at least one --phi and one --eta are required".into()));
        }
        for &phi in &self.phi_list {
            check_phi(phi)?;
        }
        for &eta in &self.eta_list {
            check_eta(eta)?;
        }
        Ok(())
    }
}

pub fn check_lambda(lambda: f64) -> Result<()> {
    ensconc_core::params::check_lambda(lambda).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn check_phi(phi: f64) -> Result<()> {
    ensconc_core::params::check_phi(phi).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn check_eta(eta: f64) -> Result<()> {
    ensconc_core::DetectorModel::new(eta).map(|_| ()).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn check_n_max(n_max: usize) -> Result<()> {
    if n_max < 2 {
        return Err(CliError::Usage(format!("nmax must be at least 2, got {n_max}")));
    }
    Ok(())
}

/// Flat `key = value` recipe file. Every key mirrors a command-line flag;
/// flags take precedence.
///
/// ```toml
/// lambda_min = 0.05
/// lambda_max = 0.95
/// lambda_steps = 19
/// phi = [0.1, 0.01]
/// eta = [1.0]
/// nmax = 100
/// out = "fig3.csv"
/// format = "csv"
/// ```
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub lambda: Option<f64>,
    pub lambda_min: Option<f64>,
    pub lambda_max: Option<f64>,
    pub lambda_steps: Option<usize>,
    pub phi: Option<Vec<f64>>,
    pub eta: Option<Vec<f64>>,
    pub nmax: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Option<OutputFormat>,
    pub include_tmss_baseline: Option<bool>,
    pub timing: Option<bool>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }
}
