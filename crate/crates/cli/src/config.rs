//! Run configuration: a TOML document with every field optional except
//! `alpha`, validated after parsing.

use std::path::PathBuf;

use dunkl::harness::HarnessConfig;
use dunkl::riesz::KernelConfig;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

impl ConfigError {
    fn invalid(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self::Invalid {
            path: path.into(),
            message: message.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Seeds {
    pub scan: u64,
    pub harness: u64,
}

impl Default for Seeds {
    fn default() -> Self {
        Self {
            scan: 1,
            harness: HarnessConfig::default().seed,
        }
    }
}

fn default_max_degree() -> usize {
    40
}

fn default_quad_points() -> usize {
    80
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub alpha: Vec<f64>,
    /// Filled from `alpha` when omitted; must match its length otherwise.
    #[serde(default)]
    pub dimension: usize,
    #[serde(default = "default_max_degree")]
    pub max_degree: usize,
    #[serde(default = "default_quad_points")]
    pub quad_points: usize,
    #[serde(default)]
    pub kernel: KernelConfig,
    #[serde(default)]
    pub seeds: Seeds,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    /// Overrides for `verify`; sizes not set keep the acceptance defaults.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub harness: Option<HarnessConfig>,
}

impl RunConfig {
    pub fn new(alpha: Vec<f64>) -> Result<Self, ConfigError> {
        let mut cfg = Self {
            dimension: alpha.len(),
            alpha,
            max_degree: default_max_degree(),
            quad_points: default_quad_points(),
            kernel: KernelConfig::default(),
            seeds: Seeds::default(),
            output: None,
            harness: None,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&mut self) -> Result<(), ConfigError> {
        if self.alpha.is_empty() {
            return Err(ConfigError::invalid("alpha", "must have at least one entry"));
        }
        for (i, &a) in self.alpha.iter().enumerate() {
            if !(a >= -0.5) || !a.is_finite() {
                return Err(ConfigError::invalid(
                    format!("alpha[{i}]"),
                    format!("{a} violates alpha >= -1/2"),
                ));
            }
        }
        if self.dimension == 0 {
            self.dimension = self.alpha.len();
        } else if self.dimension != self.alpha.len() {
            return Err(ConfigError::invalid(
                "dimension",
                format!("{} does not match len(alpha) = {}", self.dimension, self.alpha.len()),
            ));
        }
        if self.quad_points == 0 {
            return Err(ConfigError::invalid("quad_points", "must be >= 1"));
        }
        self.kernel
            .validate()
            .map_err(|e| ConfigError::invalid("kernel", e.to_string()))?;
        if let Some(h) = &self.harness {
            for (k, a) in h.alphas.iter().enumerate() {
                if let Some(i) = a.iter().position(|&v| !(v >= -0.5)) {
                    return Err(ConfigError::invalid(
                        format!("harness.alphas[{k}][{i}]"),
                        format!("{} violates alpha >= -1/2", a[i]),
                    ));
                }
            }
        }
        Ok(())
    }

    /// The acceptance configuration, with this run's seed, kernel and
    /// quadrature size, and degrees capped by `max_degree`.
    pub fn harness_config(&self) -> HarnessConfig {
        let mut h = self.harness.clone().unwrap_or_default();
        if self.harness.is_none() {
            h.kernel = self.kernel.clone();
            h.scan.kernel = self.kernel.clone();
            h.quad_points = self.quad_points;
            h.seed = self.seeds.harness;
        }
        let cap = self.max_degree.max(1);
        h.basis_degree = h.basis_degree.min(cap);
        h.ladder_degree = h.ladder_degree.min(cap);
        h.star_degree = h.star_degree.min(cap);
        h.eldwa_degree = h.eldwa_degree.min(cap);
        h.fund_degree = h.fund_degree.min(cap);
        h
    }
}

pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let de = toml::Deserializer::parse(text).map_err(|e| ConfigError::Schema {
        path: "<document>".into(),
        message: e.to_string(),
    })?;
    let mut cfg: RunConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        ConfigError::Schema {
            path: if path == "." { "<root>".into() } else { path },
            message: e.into_inner().message().trim().to_string(),
        }
    })?;
    cfg.validate()?;
    Ok(cfg)
}

pub fn load_config(path: &std::path::Path) -> Result<RunConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_config(&text)
}

pub fn to_toml(cfg: &RunConfig) -> String {
    toml::to_string(cfg).expect("RunConfig is always representable in TOML")
}
