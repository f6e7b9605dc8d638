use std::path::{Path, PathBuf};

use clap::ValueEnum;
use drhp_core::specialfn::PrecisionPolicy;
use serde::{Deserialize, Serialize};

/// Environment variable overriding the default series tolerance.
pub const PRECISION_ENV: &str = "DRHP_TARGET_REL_ERROR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Everything that determines a run besides the subcommand arguments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
#[derive(Default)]
pub struct RunConfig {
    pub seed: u64,
    pub precision: PrecisionPolicy,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
}


impl RunConfig {
    /// Built-in defaults, then the environment, then the TOML file.
    pub fn load(path: Option<&Path>) -> Result<Self, String> {
        let mut cfg = Self::default();
        if let Ok(v) = std::env::var(PRECISION_ENV) {
            cfg.precision.target_rel_error = v.trim().parse().map_err(|e| format!("{PRECISION_ENV}={v}: {e}"))?;
        }
        if let Some(p) = path {
            let text = std::fs::read_to_string(p).map_err(|e| format!("reading {}: {e}", p.display()))?;
            let file: toml::Table = toml::from_str(&text).map_err(|e| format!("parsing {}: {e}", p.display()))?;
            let mut merged = toml::Table::try_from(&cfg).map_err(|e| e.to_string())?;
            for (k, v) in file {
                match (merged.get_mut(&k), v) {
                    (Some(toml::Value::Table(dst)), toml::Value::Table(src)) => dst.extend(src),
                    (_, v) => {
                        merged.insert(k, v);
                    }
                }
            }
            cfg = merged.try_into().map_err(|e| format!("{}: {e}", p.display()))?;
        }
        cfg.precision.validate().map_err(|e| e.to_string())?;
        Ok(cfg)
    }
}
