//! Config-driven runner.

pub mod config;
pub mod output;
pub mod report;
pub mod runner;

pub use config::{bundled, bundled_config, ExperimentConfig, Numerics, OutputKind, SweepAxis, SweepConfig, BUNDLED};
pub use report::{RunReport, Timing};
pub use runner::{output_dir, run, sweep};
