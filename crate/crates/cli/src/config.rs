use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Dot,
    Text,
}

/// Optional JSON config file. Every field mirrors a flag; flags win.
#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub state: Option<String>,
    pub alpha: Option<f64>,
    pub spins: Option<usize>,
    pub modes: Option<usize>,
    pub open: Option<bool>,
    pub g: Option<PathBuf>,
    pub k: Option<PathBuf>,
    pub generator: Option<String>,
    pub gen_file: Option<PathBuf>,
    pub cutoff: Option<u32>,
    pub thetas: Option<usize>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub spin_view: Option<bool>,
    pub limit: Option<usize>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = read(path)?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }
}

pub fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// Fock cutoff used when none is given.
pub fn default_cutoff(n_modes: usize) -> u32 {
    match n_modes {
        0..=4 => 8,
        5..=10 => 6,
        _ => 4,
    }
}
