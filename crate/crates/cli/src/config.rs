//! Defaults, overridden by a JSON file named in `QGEN_CONFIG`, overridden by flags.

use std::path::Path;

use qgen_core::padic::DEFAULT_TERM_BUDGET;
use qgen_core::rat::{frac, parse_rat};
use qgen_core::Rat;
use serde::Deserialize;

pub const CONFIG_ENV: &str = "QGEN_CONFIG";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub p: u64,
    pub level: u32,
    pub truncation: usize,
    pub term_budget: u128,
    pub cesaro_tolerance: Rat,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            p: 3,
            level: 2,
            truncation: 400,
            term_budget: DEFAULT_TERM_BUDGET,
            cesaro_tolerance: frac(1, 1000),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    p: Option<u64>,
    #[serde(rename = "N")]
    level: Option<u32>,
    #[serde(rename = "M")]
    truncation: Option<usize>,
    term_budget: Option<u128>,
    cesaro_tolerance: Option<String>,
}

impl Config {
    /// Defaults plus the file named by `QGEN_CONFIG`, if set.
    pub fn load(env_path: Option<&str>) -> Result<Config, String> {
        match env_path {
            Some(path) if !path.is_empty() => Config::from_file(Path::new(path)),
            _ => Ok(Config::default()),
        }
    }

    pub fn from_file(path: &Path) -> Result<Config, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        let file: ConfigFile = serde_json::from_str(&text)
            .map_err(|e| format!("bad config {}: {e}", path.display()))?;
        let mut cfg = Config::default();
        if let Some(p) = file.p {
            cfg.p = p;
        }
        if let Some(n) = file.level {
            cfg.level = n;
        }
        if let Some(m) = file.truncation {
            cfg.truncation = m;
        }
        if let Some(b) = file.term_budget {
            cfg.term_budget = b;
        }
        if let Some(t) = file.cesaro_tolerance {
            cfg.cesaro_tolerance =
                parse_rat(&t).map_err(|e| format!("bad config {}: {e}", path.display()))?;
        }
        Ok(cfg)
    }
}
