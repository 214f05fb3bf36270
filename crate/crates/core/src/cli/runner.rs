//! Executes a config: grid, ring analysis, sweeps and the output files.

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::time::Instant;

use super::config::{ExperimentConfig, OutputKind, SweepAxis, SweepConfig};
use super::output::{rings_json, write_g_sweep_csv, write_grid_csv, write_pgm, write_tso_sweep_csv};
use super::report::RunReport;
use crate::analysis::{analyze, sweep_g, sweep_tso};
use crate::dynamics::tasp_grid_with;
use crate::error::{Error, Result};

fn create(dir: &Path, name: &str, files: &mut Vec<String>) -> Result<BufWriter<File>> {
    let path = dir.join(name);
    let f = File::create(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    files.push(name.to_string());
    Ok(BufWriter::new(f))
}

/// Output directory: the explicit one, else the config's, else `out/<name>`.
pub fn output_dir(cfg: &ExperimentConfig, explicit: Option<&Path>) -> PathBuf {
    if let Some(p) = explicit {
        return p.to_path_buf();
    }
    if let Some(p) = &cfg.output_dir {
        return p.clone();
    }
    let name = if cfg.name.is_empty() { "run" } else { &cfg.name };
    Path::new("out").join(name)
}

/// Runs every requested output of `cfg`, writing into `out`.
pub fn run(cfg: &ExperimentConfig, out: &Path) -> Result<RunReport> {
    let start = Instant::now();
    cfg.validate()?;
    fs::create_dir_all(out).map_err(|e| Error::Io(format!("{}: {e}", out.display())))?;
    let opts = cfg.evolve_options();
    let mut report = RunReport::new(cfg.clone());
    let mut files = Vec::new();

    if cfg.outputs.iter().any(|o| o.needs_grid()) {
        let t = Instant::now();
        let grid = tasp_grid_with(&cfg.model, cfg.grid_n, &opts)?;
        report.timing.grid_seconds = t.elapsed().as_secs_f64();
        report.late_coupling_points = grid.late_coupling_points;
        if cfg.wants(OutputKind::TaspGrid) {
            write_grid_csv(&grid, create(out, "tasp_grid.csv", &mut files)?)?;
            if cfg.heatmaps {
                for (c, name) in ["sx", "sy", "sz"].iter().enumerate() {
                    write_pgm(&grid, c, create(out, &format!("tasp_{name}.pgm"), &mut files)?)?;
                }
            }
        }
        let ring_outputs = [OutputKind::Rings, OutputKind::Windings, OutputKind::Charges, OutputKind::ProcessClass];
        if ring_outputs.iter().any(|o| cfg.wants(*o)) {
            let t = Instant::now();
            let mut a = analyze(&grid)?;
            report.timing.analysis_seconds = t.elapsed().as_secs_f64();
            if !cfg.wants(OutputKind::Charges) {
                for r in &mut a.rings {
                    r.enclosed_charge = None;
                }
            }
            if !cfg.wants(OutputKind::Windings) {
                for r in &mut a.rings {
                    r.winding = None;
                    r.winding_error = None;
                }
            }
            if cfg.wants(OutputKind::Rings) {
                fs::write(out.join("rings.json"), rings_json(&a.rings))?;
                files.push("rings.json".into());
            }
            report.ambiguous = a.ambiguous;
            report.frustrated_edges = a.frustrated_edges;
            if cfg.wants(OutputKind::Charges) {
                report.charges = a.charges;
                report.charge_error = a.charge_error;
            }
            if cfg.wants(OutputKind::ProcessClass) {
                report.process = Some(a.process);
            }
            report.rings = a.rings;
        }
    }

    if let Some(sw) = &cfg.sweep {
        let t = Instant::now();
        match sw.axis {
            SweepAxis::G if cfg.wants(OutputKind::GSweep) => {
                let rows = sweep_g(&cfg.model, &sw.values, sw.line_n, sw.coarse_n, &opts)?;
                write_g_sweep_csv(&rows, create(out, "g_sweep.csv", &mut files)?)?;
                report.g_sweep = Some(rows);
            }
            SweepAxis::Tso if cfg.wants(OutputKind::TsoSweep) => {
                let rows = sweep_tso(&cfg.model, &sw.values, sw.grid_n.unwrap_or(cfg.grid_n), &opts)?;
                write_tso_sweep_csv(&rows, create(out, "tso_sweep.csv", &mut files)?)?;
                report.tso_sweep = Some(rows);
            }
            _ => {}
        }
        report.timing.sweep_seconds = t.elapsed().as_secs_f64();
    }

    files.push("report.json".into());
    report.files = files;
    report.timing.total_seconds = start.elapsed().as_secs_f64();
    fs::write(out.join("report.json"), report.to_json())?;
    Ok(report)
}

/// Sweeps one axis of `cfg` over `values` (or the config's own sweep values
/// when `values` is empty and the axis matches).
pub fn sweep(cfg: &ExperimentConfig, axis: SweepAxis, values: &[f64], out: &Path) -> Result<RunReport> {
    let values: Vec<f64> = if !values.is_empty() {
        values.to_vec()
    } else {
        match &cfg.sweep {
            Some(s) if s.axis == axis => s.values.clone(),
            _ => return Err(Error::Config(format!("no values given for the {axis} sweep"))),
        }
    };
    let mut c = cfg.clone();
    let previous = cfg.sweep.clone().filter(|s| s.axis == axis);
    c.sweep = Some(SweepConfig {
        axis,
        values,
        line_n: previous.as_ref().map_or(201, |s| s.line_n),
        coarse_n: previous.as_ref().map_or(41, |s| s.coarse_n),
        grid_n: previous.and_then(|s| s.grid_n),
    });
    c.outputs = vec![match axis {
        SweepAxis::G => OutputKind::GSweep,
        SweepAxis::Tso => OutputKind::TsoSweep,
    }];
    run(&c, out)
}
