//! Experiment plan files: the JSON description of a sum-rate sweep.

use anyhow::{bail, Context, Result};
use bdris_core::sumrate::{dbm_to_watts, OptimizerOptions, SystemConfig, DEFAULT_PATH_GAIN};
use bdris_core::ArchitectureSpec;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

/// A complete sweep description: which architectures to run, at which
/// element counts, over how many shared channel realizations.
///
/// Powers are taken in dBm — the unit the experiments are quoted in —
/// and converted to watts when building per-run configurations.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentPlan {
    /// Textual architecture specs, e.g. `"tree"` or `"band:3"`.
    pub architectures: Vec<String>,
    /// Element counts to sweep.
    pub n_values: Vec<usize>,
    /// Channel realizations per (architecture, N) point.
    pub realizations: usize,
    /// Master seed; every run derives its randomness from it.
    pub seed: u64,
    /// Transmit antennas.
    pub m: usize,
    /// Receivers.
    pub k: usize,
    /// Transmit power budget in dBm.
    pub p_t_dbm: f64,
    /// Noise power in dBm.
    pub noise_dbm: f64,
    /// Transmitter→RIS linear power gain.
    #[serde(default = "default_gain")]
    pub path_gain_it: f64,
    /// RIS→receiver linear power gain.
    #[serde(default = "default_gain")]
    pub path_gain_ri: f64,
    /// Solver settings applied to every run.
    #[serde(default)]
    pub optimizer: OptimizerOptions,
    /// Where to write results; falls back to `BDRIS_OUT_DIR`, then the
    /// working directory.
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
}

fn default_gain() -> f64 {
    DEFAULT_PATH_GAIN
}

impl ExperimentPlan {
    /// Reads and validates a plan from a JSON file.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read plan file {}", path.display()))?;
        let plan: ExperimentPlan = serde_json::from_str(&text)
            .with_context(|| format!("cannot parse plan file {}", path.display()))?;
        plan.validate()?;
        Ok(plan)
    }

    /// Checks the plan's own invariants; per-(arch, N) divisibility is
    /// deferred to launch time so one bad pairing does not sink the rest.
    pub fn validate(&self) -> Result<()> {
        if self.architectures.is_empty() {
            bail!("plan lists no architectures");
        }
        if self.n_values.is_empty() {
            bail!("plan lists no element counts");
        }
        if self.n_values.iter().any(|&n| n < 1) {
            bail!("element counts must be at least 1");
        }
        if self.realizations < 1 {
            bail!("realizations must be at least 1");
        }
        for text in &self.architectures {
            text.parse::<ArchitectureSpec>()
                .with_context(|| format!("invalid architecture spec {text:?}"))?;
        }
        // Surface bad solver/system numbers before any work starts.
        self.config_for(self.n_values[0], 0)
            .validate()
            .map_err(|e| anyhow::anyhow!("{e}"))?;
        Ok(())
    }

    /// Parsed architecture list, in plan order.
    pub fn parsed_architectures(&self) -> Vec<ArchitectureSpec> {
        self.architectures
            .iter()
            .map(|t| t.parse().expect("validated at load time"))
            .collect()
    }

    /// Per-run system configuration at element count `n` with `seed`.
    pub fn config_for(&self, n: usize, seed: u64) -> SystemConfig {
        SystemConfig {
            m: self.m,
            k: self.k,
            n,
            p_t: dbm_to_watts(self.p_t_dbm),
            noise_power: dbm_to_watts(self.noise_dbm),
            path_gain_it: self.path_gain_it,
            path_gain_ri: self.path_gain_ri,
            seed,
        }
    }
}
