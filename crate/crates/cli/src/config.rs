//! Run configuration files. Every key is optional and mirrors a flag of the
//! same name; flags win over the file and the file wins over defaults.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::args::{BandSelection, Format, MethodChoice, ModelName, QuadratureChoice};
use crate::error::{CliError, CliResult};

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ConfigFile {
    pub model: Option<ModelName>,
    pub file: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
    pub grid: Option<usize>,
    pub jobs: Option<usize>,
    pub quiet: Option<bool>,
    pub t1: Option<f64>,
    pub t2: Option<f64>,
    pub delta: Option<f64>,
    pub band: Option<BandSelection>,
    pub method: Option<MethodChoice>,
    pub quadrature: Option<QuadratureChoice>,
    pub samples: Option<usize>,
    pub points: Option<usize>,
    pub eps: Option<f64>,
    pub lambda: Option<f64>,
    pub lambda_min: Option<f64>,
    pub lambda_max: Option<f64>,
    pub ratio_min: Option<f64>,
    pub ratio_max: Option<f64>,
    pub ratio_steps: Option<usize>,
    pub delta_min: Option<f64>,
    pub delta_max: Option<f64>,
    pub delta_steps: Option<usize>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| CliError::Input(format!("config {}: {e}", path.display())))
    }

    /// JSON when the document starts with `{`, TOML otherwise.
    pub fn parse(text: &str) -> Result<Self, String> {
        if text.trim_start().starts_with('{') {
            serde_json::from_str(text).map_err(|e| e.to_string())
        } else {
            toml::from_str(text).map_err(|e| e.to_string())
        }
    }
}
