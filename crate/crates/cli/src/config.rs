//! Per-invocation defaults, optionally read from a JSON file.

use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Deserialize;

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "camelCase", default, deny_unknown_fields)]
pub struct Config {
    /// Truncation order N.
    pub truncation: usize,
    /// Degree bound D.
    pub degree_bound: usize,
    /// Decimal digits for evaluation.
    pub digits: u32,
    /// Orbit depth for regularity checks.
    pub k_max: usize,
    /// Seed for `selfcheck`.
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            truncation: 128,
            degree_bound: 8,
            digits: 40,
            k_max: 64,
            seed: 1,
        }
    }
}

impl Config {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let cfg: Config = match path {
            None => Config::default(),
            Some(p) => {
                let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                serde_json::from_str(&text).with_context(|| format!("parsing {}", p.display()))?
            }
        };
        if cfg.truncation == 0 || cfg.degree_bound == 0 || cfg.digits == 0 || cfg.k_max == 0 || cfg.seed == 0 {
            bail!("configuration values must be positive");
        }
        Ok(cfg)
    }
}
