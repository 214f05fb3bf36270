//! Parameter sweeps over the quench rate and the spin-orbit strength.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::analyze;
use super::process::ProcessLabel;
use super::rings::{diagonal_crossings, RingKind, SIS_THRESHOLD_FRACTION};
use crate::dynamics::{tasp_grid_with, tasp_points, EvolveOptions, TaspVector};
use crate::error::{Error, Result};
use crate::model::{wrap_delta, ModelParams, Momentum, StartTime};

/// Ring crossings of the zone diagonal at one quench rate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GSweepRow {
    pub g: f64,
    /// Diagonal coordinate `k` (with `kx = ky = k`) of each crossing, ascending.
    pub bis: Vec<f64>,
    pub fsis: Vec<f64>,
    pub isis: Vec<f64>,
    /// Spin-inversion pairs that have merged: local minima of `|s|` below the
    /// SIS threshold with no sign change of the occupation.
    pub merged: Vec<f64>,
    /// Process type from the coarse full-grid analysis.
    pub process: Option<ProcessLabel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Ring summary at one spin-orbit strength.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TsoSweepRow {
    pub t_so: f64,
    pub ring_count: usize,
    pub signature: Vec<RingKind>,
    pub noncontractible: usize,
    /// Crossings of the spin-inversion rings with the diagonal `kx = ky`.
    pub sis_diagonal_crossings: usize,
    pub process: Option<ProcessLabel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// `base` with quench rate `g`. A finite `t_int` is scaled with `g` so the
/// initial mass `s g / t_int + m_z` stays put.
pub fn params_for_g(base: &ModelParams, g: f64) -> Result<ModelParams> {
    if base.is_sudden() {
        return Err(Error::InvalidParams("a g-sweep needs a slow base quench (g > 0)".into()));
    }
    if !(g > 0.0) {
        return Err(Error::InvalidParams(format!("sweep values of g must be positive, got {g}")));
    }
    let mut p = *base;
    p.g = g;
    if let StartTime::At(t) = base.t_int {
        p.t_int = StartTime::At(t * g / base.g);
    }
    p.validate()?;
    Ok(p)
}

/// Zeros of the two factor fields along the diagonal, as `(occupation, axis)`
/// crossing lists. The sign gauge is carried along the line by requiring
/// neighbouring polarizations to have a nonnegative overlap.
pub fn diagonal_factor_zeros(ks: &[f64], s: &[TaspVector]) -> (Vec<f64>, Vec<f64>) {
    let mut sigma = 1.0;
    let mut occ = Vec::with_capacity(s.len());
    let mut axis = Vec::with_capacity(s.len());
    for i in 0..s.len() {
        if i > 0 {
            let (a, b) = (s[i - 1].as_array(), s[i].as_array());
            if a[0] * b[0] + a[1] * b[1] + a[2] * b[2] < 0.0 {
                sigma = -sigma;
            }
        }
        let m = s[i].norm();
        occ.push(sigma * m);
        axis.push(if m > 0.0 { sigma * s[i].sz / m } else { 0.0 });
    }
    let zeros = |f: &[f64]| {
        let mut out = Vec::new();
        for i in 0..f.len().saturating_sub(1) {
            if (f[i] > 0.0) != (f[i + 1] > 0.0) {
                out.push(ks[i] + (ks[i + 1] - ks[i]) * f[i] / (f[i] - f[i + 1]));
            }
        }
        out
    };
    (zeros(&occ), zeros(&axis))
}

/// Splits spin-inversion crossings into those nearest some band-inversion
/// crossing (FSIS) and the rest (ISIS).
pub fn label_crossings(bis: &[f64], sis: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let mut first = vec![false; sis.len()];
    if !sis.is_empty() {
        for b in bis {
            let near = (0..sis.len())
                .min_by(|&i, &j| wrap_delta(sis[i] - b).abs().total_cmp(&wrap_delta(sis[j] - b).abs()))
                .unwrap();
            first[near] = true;
        }
    }
    let pick = |want: bool| sis.iter().zip(&first).filter(|(_, f)| **f == want).map(|(k, _)| *k).collect();
    (pick(true), pick(false))
}

/// Local minima of `|s|` below the SIS threshold that are not next to a
/// sign change: two spin-inversion crossings that have run into each other.
pub fn merged_pairs(ks: &[f64], s: &[TaspVector], crossings: &[f64]) -> Vec<f64> {
    let tau = SIS_THRESHOLD_FRACTION * s.iter().map(|v| v.inplane()).fold(0.0, f64::max);
    let h = if ks.len() > 1 { ks[1] - ks[0] } else { return vec![] };
    (1..s.len().saturating_sub(1))
        .filter(|&i| {
            let m = s[i].norm();
            m < tau
                && m < s[i - 1].norm()
                && m <= s[i + 1].norm()
                && crossings.iter().all(|c| (c - ks[i]).abs() > 2.0 * h)
        })
        .map(|i| ks[i])
        .collect()
}

/// Smallest distance between an FSIS and an ISIS crossing; zero once the two
/// have merged, `None` when either is missing.
pub fn fsis_isis_separation(row: &GSweepRow) -> Option<f64> {
    if !row.merged.is_empty() {
        return Some(0.0);
    }
    row.fsis.iter().flat_map(|f| row.isis.iter().map(move |i| wrap_delta(f - i).abs())).min_by(f64::total_cmp)
}

fn g_row(base: &ModelParams, g: f64, line_n: usize, coarse_n: usize, opts: &EvolveOptions) -> Result<GSweepRow> {
    let p = params_for_g(base, g)?;
    let h = 2.0 * PI / line_n as f64;
    let line: Vec<f64> = (0..line_n).map(|i| -PI + i as f64 * h).collect();
    let ks: Vec<Momentum> = line.iter().map(|&k| Momentum { kx: k, ky: k }).collect();
    let s = tasp_points(&p, &ks, opts)?;
    let (sis, bis) = diagonal_factor_zeros(&line, &s);
    let (fsis, isis) = label_crossings(&bis, &sis);
    let merged = merged_pairs(&line, &s, &sis);
    let grid = tasp_grid_with(&p, coarse_n, opts)?;
    let process = Some(analyze(&grid)?.process.label);
    Ok(GSweepRow { g, bis, fsis, isis, merged, process, error: None })
}

/// Crossings of every ring with the diagonal for each `g`, from `line_n`
/// points along the diagonal; the process type comes from a `coarse_n` grid.
/// A failing value is recorded in its row and the sweep carries on.
pub fn sweep_g(
    base: &ModelParams,
    g_values: &[f64],
    line_n: usize,
    coarse_n: usize,
    opts: &EvolveOptions,
) -> Result<Vec<GSweepRow>> {
    if g_values.is_empty() {
        return Err(Error::InvalidParams("empty g sweep".into()));
    }
    if line_n < 3 {
        return Err(Error::GridTooSmall(format!("diagonal needs at least 3 points, got {line_n}")));
    }
    Ok(g_values
        .par_iter()
        .map(|&g| {
            g_row(base, g, line_n, coarse_n, opts).unwrap_or_else(|e| GSweepRow {
                g,
                bis: vec![],
                fsis: vec![],
                isis: vec![],
                merged: vec![],
                process: None,
                error: Some(e.to_string()),
            })
        })
        .collect())
}

fn tso_row(base: &ModelParams, t_so: f64, grid_n: usize, opts: &EvolveOptions) -> Result<TsoSweepRow> {
    let mut p = *base;
    p.t_so = t_so;
    let a = analyze(&tasp_grid_with(&p, grid_n, opts)?)?;
    Ok(TsoSweepRow {
        t_so,
        ring_count: a.rings.len(),
        signature: a.process.signature.clone(),
        noncontractible: a.rings.iter().filter(|r| !r.contractible).count(),
        sis_diagonal_crossings: a
            .rings
            .iter()
            .filter(|r| r.kind.is_sis() && r.contractible)
            .map(|r| diagonal_crossings(r).len())
            .sum(),
        process: Some(a.process.label),
        error: None,
    })
}

/// Ring summary per `t_so` value on a `grid_n` grid; failures go in-row.
pub fn sweep_tso(base: &ModelParams, values: &[f64], grid_n: usize, opts: &EvolveOptions) -> Result<Vec<TsoSweepRow>> {
    if values.is_empty() {
        return Err(Error::InvalidParams("empty t_so sweep".into()));
    }
    Ok(values
        .par_iter()
        .map(|&t| {
            tso_row(base, t, grid_n, opts).unwrap_or_else(|e| TsoSweepRow {
                t_so: t,
                ring_count: 0,
                signature: vec![],
                noncontractible: 0,
                sis_diagonal_crossings: 0,
                process: None,
                error: Some(e.to_string()),
            })
        })
        .collect())
}
