//! Optional TOML configuration file. Every value here is a default that an
//! explicit command-line flag overrides; the resolved settings land in the
//! run manifest either way.

use std::fs;
use std::path::Path;

use serde::Deserialize;

use crate::commands::Failure;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub solver: Option<String>,
    pub mode: Option<String>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    /// Å per lattice unit for emitted coordinates.
    pub scale: Option<f64>,
    #[serde(default)]
    pub penalties: PenaltySection,
    #[serde(default)]
    pub anneal: AnnealSection,
    #[serde(default)]
    pub vqe: VqeSection,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PenaltySection {
    pub overlap: Option<f64>,
    pub backturn: Option<f64>,
    /// λ₁ distance weight of the interaction Hamiltonian.
    pub distance: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnnealSection {
    pub t_start: Option<f64>,
    pub t_end: Option<f64>,
    pub sweeps: Option<u32>,
    pub restarts: Option<u32>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VqeSection {
    pub layers: Option<u32>,
    pub alpha: Option<f64>,
    pub shots: Option<u32>,
    pub max_evals: Option<u32>,
    pub restarts: Option<u32>,
    pub topology: Option<String>,
    pub full_ancillas: Option<bool>,
    pub exact_expectation: Option<bool>,
    pub qubit_cap: Option<usize>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, Failure> {
        let Some(path) = path else {
            return Ok(FileConfig::default());
        };
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        toml::from_str(&text)
            .map_err(|e| Failure::Usage(format!("config {}: {e}", path.display())))
    }
}
