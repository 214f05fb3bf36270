use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{ends_adiabatic, tasp_at, EvolveOptions, TaspVector};
use crate::error::{Error, Result};
use crate::model::{ModelParams, Momentum};

/// TASP on the `n x n` grid `k = -pi + i 2pi/n`, stored row-major with index `ix * n + iy`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaspGrid {
    pub grid_n: usize,
    pub data: Vec<TaspVector>,
    pub params: ModelParams,
    /// Points where `g/t_f` is not small against `eps_f`.
    pub late_coupling_points: usize,
}

impl TaspGrid {
    pub fn spacing(&self) -> f64 {
        2.0 * PI / self.grid_n as f64
    }

    pub fn coord(&self, i: usize) -> f64 {
        -PI + i as f64 * self.spacing()
    }

    pub fn momentum(&self, ix: usize, iy: usize) -> Momentum {
        Momentum { kx: self.coord(ix), ky: self.coord(iy) }
    }

    #[inline]
    pub fn get(&self, ix: usize, iy: usize) -> &TaspVector {
        &self.data[ix * self.grid_n + iy]
    }

    /// Periodic access with signed indices.
    #[inline]
    pub fn get_wrapped(&self, ix: i64, iy: i64) -> &TaspVector {
        let n = self.grid_n as i64;
        self.get(ix.rem_euclid(n) as usize, iy.rem_euclid(n) as usize)
    }

    /// Bilinear interpolation at an arbitrary (unwrapped) momentum.
    pub fn sample(&self, kx: f64, ky: f64) -> TaspVector {
        let h = self.spacing();
        let fx = (kx + PI) / h;
        let fy = (ky + PI) / h;
        let (x0, y0) = (fx.floor(), fy.floor());
        let (tx, ty) = (fx - x0, fy - y0);
        let (ix, iy) = (x0 as i64, y0 as i64);
        let a = self.get_wrapped(ix, iy);
        let b = self.get_wrapped(ix + 1, iy);
        let c = self.get_wrapped(ix, iy + 1);
        let d = self.get_wrapped(ix + 1, iy + 1);
        let mix = |p: f64, q: f64, r: f64, s: f64| {
            (1.0 - tx) * (1.0 - ty) * p + tx * (1.0 - ty) * q + (1.0 - tx) * ty * r + tx * ty * s
        };
        TaspVector::new(mix(a.sx, b.sx, c.sx, d.sx), mix(a.sy, b.sy, c.sy, d.sy), mix(a.sz, b.sz, c.sz, d.sz))
    }

    pub fn max_inplane(&self) -> f64 {
        self.data.iter().map(|v| v.inplane()).fold(0.0, f64::max)
    }

    /// Largest `|sx(kx, ky) - sy(ky, kx)|` over the grid.
    pub fn transpose_asymmetry(&self) -> f64 {
        let n = self.grid_n;
        let mut worst: f64 = 0.0;
        for ix in 0..n {
            for iy in 0..n {
                let a = self.get(ix, iy);
                let b = self.get(iy, ix);
                worst = worst.max((a.sx - b.sy).abs()).max((a.sz - b.sz).abs());
            }
        }
        worst
    }
}

/// TASP on a grid with default options.
pub fn tasp_grid(params: &ModelParams, grid_n: usize) -> Result<TaspGrid> {
    tasp_grid_with(params, grid_n, &EvolveOptions::default())
}

/// Evaluates every grid point independently; the output does not depend on
/// how rayon schedules the points.
pub fn tasp_grid_with(params: &ModelParams, grid_n: usize, opts: &EvolveOptions) -> Result<TaspGrid> {
    if grid_n < 3 {
        return Err(Error::GridTooSmall(format!("tasp_grid needs grid_n >= 3, got {grid_n}")));
    }
    params.validate()?;
    let h = 2.0 * PI / grid_n as f64;
    let ks: Vec<Momentum> = (0..grid_n * grid_n)
        .map(|i| Momentum { kx: -PI + (i / grid_n) as f64 * h, ky: -PI + (i % grid_n) as f64 * h })
        .collect();
    let data = tasp_points(params, &ks, opts)?;
    let late = ks.iter().filter(|k| !params.is_sudden() && !ends_adiabatic(params, **k)).count();
    Ok(TaspGrid { grid_n, data, params: *params, late_coupling_points: late })
}

/// TASP at arbitrary momenta, in input order.
pub fn tasp_points(params: &ModelParams, ks: &[Momentum], opts: &EvolveOptions) -> Result<Vec<TaspVector>> {
    params.validate()?;
    let results: Vec<Result<TaspVector>> =
        ks.par_iter().map(|&k| tasp_at(params, k, opts).map_err(|e| e.at(k))).collect();
    results.into_iter().collect()
}
