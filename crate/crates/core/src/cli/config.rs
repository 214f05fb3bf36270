//! Experiment configuration files (TOML) and the bundled figure configs.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::dynamics::EvolveOptions;
use crate::error::{Error, Result};
use crate::model::ModelParams;

/// Products a run can emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputKind {
    TaspGrid,
    Rings,
    Windings,
    Charges,
    ProcessClass,
    GSweep,
    TsoSweep,
}

impl OutputKind {
    /// Whether this output needs the full TASP grid and its ring analysis.
    pub fn needs_grid(self) -> bool {
        !matches!(self, OutputKind::GSweep | OutputKind::TsoSweep)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    G,
    #[serde(rename = "t_so")]
    Tso,
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepAxis::G => "g",
            SweepAxis::Tso => "t_so",
        })
    }
}

impl std::str::FromStr for SweepAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "g" => Ok(SweepAxis::G),
            "t_so" | "tso" => Ok(SweepAxis::Tso),
            _ => Err(Error::Config(format!("unknown sweep axis {s:?}; use g or t_so"))),
        }
    }
}

fn default_line_n() -> usize {
    201
}

fn default_coarse_n() -> usize {
    41
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub axis: SweepAxis,
    pub values: Vec<f64>,
    /// Points along the diagonal for a g-sweep.
    #[serde(default = "default_line_n")]
    pub line_n: usize,
    /// Grid for the process label of a g-sweep.
    #[serde(default = "default_coarse_n")]
    pub coarse_n: usize,
    /// Grid for a t_so sweep; the run's `grid_n` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_n: Option<usize>,
}

/// Overrides of the numerical defaults; absent fields keep the defaults.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Numerics {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol_per_time: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phase_step: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub switch_factor: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start_factor: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub full_integration: Option<bool>,
}

impl Numerics {
    pub fn evolve_options(&self) -> EvolveOptions {
        let mut o = EvolveOptions::default();
        if let Some(v) = self.tol_per_time {
            o.integrator.tol_per_time = v;
        }
        if let Some(v) = self.phase_step {
            o.integrator.phase_step = v;
        }
        if let Some(v) = self.switch_factor {
            o.switch_factor = v;
        }
        if let Some(v) = self.start_factor {
            o.start_factor = v;
        }
        if let Some(v) = self.full_integration {
            o.full_integration = v;
        }
        o
    }

    fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("tol_per_time", self.tol_per_time),
            ("phase_step", self.phase_step),
            ("switch_factor", self.switch_factor),
            ("start_factor", self.start_factor),
        ] {
            if let Some(v) = v {
                if !(v > 0.0 && v.is_finite()) {
                    return Err(Error::Config(format!("numerics.{name} must be positive, got {v}")));
                }
            }
        }
        Ok(())
    }
}

fn default_grid_n() -> usize {
    201
}

fn default_outputs() -> Vec<OutputKind> {
    vec![OutputKind::TaspGrid, OutputKind::Rings, OutputKind::Windings, OutputKind::Charges, OutputKind::ProcessClass]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    pub model: ModelParams,
    #[serde(default = "default_grid_n")]
    pub grid_n: usize,
    #[serde(default = "default_outputs")]
    pub outputs: Vec<OutputKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
    /// Write one PGM heatmap per TASP component next to the grid CSV.
    #[serde(default)]
    pub heatmaps: bool,
    #[serde(default)]
    pub numerics: Numerics,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepConfig>,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let mut cfg = Self::from_toml(&text)?;
        if cfg.name.is_empty() {
            cfg.name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        }
        Ok(cfg)
    }

    /// A file path, or else the name of a bundled config.
    pub fn resolve(spec: &str) -> Result<Self> {
        let path = Path::new(spec);
        if path.exists() {
            return Self::load(path);
        }
        match bundled(spec) {
            Some(text) => Self::from_toml(text),
            None => Err(Error::Config(format!("{spec}: no such file or bundled config (see list-configs)"))),
        }
    }

    pub fn evolve_options(&self) -> EvolveOptions {
        self.numerics.evolve_options()
    }

    pub fn wants(&self, kind: OutputKind) -> bool {
        self.outputs.contains(&kind)
    }

    pub fn validate(&self) -> Result<()> {
        self.model.validate().map_err(|e| Error::Config(e.to_string()))?;
        self.numerics.validate()?;
        if self.outputs.is_empty() {
            return Err(Error::Config("no outputs requested".into()));
        }
        let needs_rings = self.outputs.iter().any(|o| o.needs_grid() && *o != OutputKind::TaspGrid);
        let min_n = if needs_rings { 41 } else { 3 };
        if self.outputs.iter().any(|o| o.needs_grid()) && self.grid_n < min_n {
            return Err(Error::Config(format!("grid_n must be at least {min_n}, got {}", self.grid_n)));
        }
        let sweeps = self.wants(OutputKind::GSweep) || self.wants(OutputKind::TsoSweep);
        match &self.sweep {
            Some(s) => {
                if s.values.is_empty() {
                    return Err(Error::Config("sweep.values is empty".into()));
                }
                if s.values.iter().any(|v| !v.is_finite()) {
                    return Err(Error::Config("sweep.values must be finite".into()));
                }
                if s.line_n < 3 || s.coarse_n < 41 || s.grid_n.is_some_and(|n| n < 41) {
                    return Err(Error::Config("sweep grids too small (line_n >= 3, coarse_n and grid_n >= 41)".into()));
                }
                let want = match s.axis {
                    SweepAxis::G => OutputKind::TsoSweep,
                    SweepAxis::Tso => OutputKind::GSweep,
                };
                if self.wants(want) {
                    return Err(Error::Config(format!("outputs ask for {want:?} but the sweep axis is {}", s.axis)));
                }
            }
            None if sweeps => return Err(Error::Config("sweep output requested without a [sweep] section".into())),
            None => {}
        }
        Ok(())
    }
}

/// Bundled configs reproducing the figures: `(name, toml)`.
pub const BUNDLED: &[(&str, &str)] = &[
    ("fig1", include_str!("../../configs/fig1.toml")),
    ("fig2", include_str!("../../configs/fig2.toml")),
    ("fig3b", include_str!("../../configs/fig3b.toml")),
    ("fig3c", include_str!("../../configs/fig3c.toml")),
    ("fig3d", include_str!("../../configs/fig3d.toml")),
    ("fig4a", include_str!("../../configs/fig4a.toml")),
    ("fig4b", include_str!("../../configs/fig4b.toml")),
    ("fig5", include_str!("../../configs/fig5.toml")),
    ("fig6b", include_str!("../../configs/fig6b.toml")),
    ("fig6c", include_str!("../../configs/fig6c.toml")),
    ("fig8", include_str!("../../configs/fig8.toml")),
];

pub fn bundled(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn bundled_config(name: &str) -> Result<ExperimentConfig> {
    let text = bundled(name).ok_or_else(|| Error::Config(format!("no bundled config named {name:?}")))?;
    ExperimentConfig::from_toml(text)
}
