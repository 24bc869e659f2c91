//! Optional TOML run configuration. Command-line flags override it.

use std::path::Path;

use serde::Deserialize;

use crate::error::{usage, CliResult, Context};

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub alg: Option<String>,
    pub seed: Option<u64>,
    /// Rounding threshold for `lp-rand`.
    pub t: Option<f64>,
    pub bound: Option<bool>,
    pub beta: Option<f64>,
    /// `embedded` or `external:<path>`.
    pub solver: Option<String>,
}

impl RunConfig {
    pub fn load(path: Option<&Path>) -> CliResult<RunConfig> {
        let Some(path) = path else {
            return Ok(RunConfig::default());
        };
        let text = catec_core::io::read_text(path).at(path)?;
        toml::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
    }
}
