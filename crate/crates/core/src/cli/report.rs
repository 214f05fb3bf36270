//! The structured report written by every run.

use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use crate::analysis::{ChargeReport, GSweepRow, ProcessClass, Ring, TsoSweepRow};

/// Wall-clock seconds per stage. Not part of the reproducible output.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub grid_seconds: f64,
    pub analysis_seconds: f64,
    pub sweep_seconds: f64,
    pub total_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub tool_version: String,
    pub config: ExperimentConfig,
    #[serde(default)]
    pub rings: Vec<Ring>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub process: Option<ProcessClass>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub charges: Option<ChargeReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub charge_error: Option<String>,
    #[serde(default)]
    pub ambiguous: bool,
    #[serde(default)]
    pub frustrated_edges: usize,
    /// Grid points where `g/t_f` is not small against the final gap.
    #[serde(default)]
    pub late_coupling_points: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g_sweep: Option<Vec<GSweepRow>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tso_sweep: Option<Vec<TsoSweepRow>>,
    /// Files written, relative to the output directory.
    #[serde(default)]
    pub files: Vec<String>,
    pub timing: Timing,
}

impl RunReport {
    pub fn new(config: ExperimentConfig) -> Self {
        RunReport {
            tool_version: crate::VERSION.to_string(),
            config,
            rings: Vec::new(),
            process: None,
            charges: None,
            charge_error: None,
            ambiguous: false,
            frustrated_edges: 0,
            late_coupling_points: 0,
            g_sweep: None,
            tso_sweep: None,
            files: Vec::new(),
            timing: Timing::default(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// The report with timing zeroed, for reproducibility comparisons.
    pub fn without_timing(&self) -> Self {
        RunReport { timing: Timing::default(), ..self.clone() }
    }
}
