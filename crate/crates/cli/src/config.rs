use clap::{Args, ValueEnum};
use qwalk_core::evolution::DEFAULT_MAX_T;
use qwalk_core::model::{make_initial_state, CoinParameters, InitialState};
use qwalk_core::num_complex::Complex64;
use serde::Deserialize;

use crate::angle::{deserialize_angle, Angle};
use crate::error::{CliError, CliResult};

/// Environment variable overriding the evolution horizon cap.
pub const MAX_T_ENV: &str = "QW_MAX_T";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// Coin phases and initial coin state; defaults are the worked example
/// `sigma+ = 3pi/2`, `sigma- = pi`, `phi0 = (1, 0)`.
#[derive(Debug, Clone, Args)]
pub struct WalkArgs {
    /// Phase on x >= 1 (radians; accepts forms like "3pi/2")
    #[arg(long, default_value = "3pi/2", allow_hyphen_values = true)]
    pub sigma_plus: Angle,
    /// Phase on x <= -1
    #[arg(long, default_value = "pi", allow_hyphen_values = true)]
    pub sigma_minus: Angle,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub alpha_re: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub alpha_im: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub beta_re: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub beta_im: f64,
}

impl WalkArgs {
    pub fn walk(&self) -> CliResult<Walk> {
        Walk::new(
            self.sigma_plus.0,
            self.sigma_minus.0,
            [self.alpha_re, self.alpha_im],
            [self.beta_re, self.beta_im],
        )
    }
}

/// A validated parameter set.
#[derive(Debug, Clone, Copy)]
pub struct Walk {
    pub params: CoinParameters,
    pub init: InitialState,
}

impl Walk {
    pub fn new(sigma_plus: f64, sigma_minus: f64, alpha: [f64; 2], beta: [f64; 2]) -> CliResult<Self> {
        if !(sigma_plus.is_finite() && sigma_minus.is_finite()) {
            return Err(CliError::Config("coin phases must be finite".into()));
        }
        let init = make_initial_state(Complex64::new(alpha[0], alpha[1]), Complex64::new(beta[0], beta[1]))
            .map_err(|e| CliError::Config(format!("invalid initial state: {e}")))?;
        Ok(Walk {
            params: CoinParameters::new(sigma_plus, sigma_minus),
            init,
        })
    }
}

/// One entry of a sweep file.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(deserialize_with = "deserialize_angle")]
    pub sigma_plus: f64,
    #[serde(deserialize_with = "deserialize_angle")]
    pub sigma_minus: f64,
    #[serde(default)]
    pub alpha_re: f64,
    #[serde(default)]
    pub alpha_im: f64,
    #[serde(default)]
    pub beta_re: f64,
    #[serde(default)]
    pub beta_im: f64,
    /// Also simulate to this time when present.
    pub t: Option<usize>,
    pub grid_points: Option<usize>,
    pub bin_width: Option<f64>,
    /// Name of this entry's output directory.
    pub out: Option<String>,
    pub format: Option<Format>,
}

impl RunConfig {
    pub fn walk(&self) -> CliResult<Walk> {
        Walk::new(
            self.sigma_plus,
            self.sigma_minus,
            [self.alpha_re, self.alpha_im],
            [self.beta_re, self.beta_im],
        )
    }
}

pub fn max_t() -> CliResult<usize> {
    match std::env::var(MAX_T_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Config(format!("{MAX_T_ENV}={v:?} is not a non-negative integer"))),
        Err(_) => Ok(DEFAULT_MAX_T),
    }
}
