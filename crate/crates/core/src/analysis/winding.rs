//! Winding of the dynamical field along rings.
//!
//! On a BIS the field is `(-sx, -sy)`; on a spin-inversion ring it is the
//! normal derivative `-(d sx, d sy)/dk_perp`. Both are parallel to `h_so`,
//! so their counterclockwise winding counts the `h_so` vortices on one side.
//! The invariant carried by a ring is the charge sum of its inverted side:
//! `-W` when that side is the interior and `+W` when it is the exterior (the
//! charges of the whole zone sum to zero). A BIS or ISIS is inverted on the
//! side where `sz > 0`; an FSIS shares the side of the BIS it accompanies.

use std::f64::consts::PI;

use super::rings::{Ring, RingKind, Side};
use crate::dynamics::TaspGrid;
use crate::error::{Error, Result};
use crate::model::{wrap_delta, ModelParams, Momentum};

/// Fields weaker than this anywhere on the ring make the winding undefined.
pub const MIN_FIELD: f64 = 1e-4;
/// Largest accepted distance of the raw winding from an integer.
pub const QUANTIZATION_TOL: f64 = 0.1;

/// Raw counterclockwise winding (in turns) of a closed sequence of vectors.
pub fn raw_winding(vs: &[[f64; 2]]) -> f64 {
    let n = vs.len();
    let mut total = 0.0;
    for i in 0..n {
        let a = vs[i][1].atan2(vs[i][0]);
        let b = vs[(i + 1) % n][1].atan2(vs[(i + 1) % n][0]);
        total += wrap_delta(b - a);
    }
    total / (2.0 * PI)
}

/// Integer winding with the magnitude and quantization checks.
///
/// The residual is measured on `sum(sin dtheta) / 2pi`, which falls short of
/// the integer when consecutive samples are far apart in angle.
pub fn quantized_winding(vs: &[[f64; 2]]) -> Result<i32> {
    let weakest = vs.iter().map(|v| v[0].hypot(v[1])).fold(f64::INFINITY, f64::min);
    if !(weakest >= MIN_FIELD) {
        return Err(Error::DegenerateField { magnitude: weakest });
    }
    // the wrapped-angle sum is an integer by construction; steps too coarse
    // to follow the rotation show up in the chord estimate sum(sin dtheta)
    let total = raw_winding(vs).round();
    let n = vs.len();
    let chord: f64 = (0..n)
        .map(|i| {
            let (a, b) = (vs[i], vs[(i + 1) % n]);
            (a[0] * b[1] - a[1] * b[0]) / (a[0].hypot(a[1]) * b[0].hypot(b[1]))
        })
        .sum::<f64>()
        / (2.0 * PI);
    if (chord - total).abs() > QUANTIZATION_TOL {
        return Err(Error::Quantization { raw: chord });
    }
    Ok(total as i32)
}

/// Outward unit normals of a counterclockwise loop.
pub fn outward_normals(path: &[[f64; 2]]) -> Result<Vec<[f64; 2]>> {
    let n = path.len();
    (0..n)
        .map(|i| {
            let p = path[(i + n - 1) % n];
            let q = path[(i + 1) % n];
            let (tx, ty) = (q[0] - p[0], q[1] - p[1]);
            let l = tx.hypot(ty);
            if !(l > 1e-12) {
                return Err(Error::NormalEstimation { index: i });
            }
            Ok([ty / l, -tx / l])
        })
        .collect()
}

/// Side on which `sz > 0`, by majority over samples half a spacing off the ring.
pub fn positive_side(ring: &Ring, grid: &TaspGrid) -> Result<Side> {
    if !ring.contractible {
        return Err(Error::OpenRing);
    }
    let path = ring.path();
    let normals = outward_normals(&path)?;
    let d = 0.5 * grid.spacing();
    let (mut votes, mut bias) = (0i64, 0.0);
    for (p, nv) in path.iter().zip(&normals) {
        let out = grid.sample(p[0] + d * nv[0], p[1] + d * nv[1]).sz;
        let inn = grid.sample(p[0] - d * nv[0], p[1] - d * nv[1]).sz;
        bias += out - inn;
        match (out > 0.0, inn > 0.0) {
            (true, false) => votes += 1,
            (false, true) => votes -= 1,
            _ => {}
        }
    }
    Ok(if votes > 0 || (votes == 0 && bias > 0.0) { Side::Exterior } else { Side::Interior })
}

fn signed_invariant(w: i32, side: Side) -> i32 {
    match side {
        Side::Interior => -w,
        Side::Exterior => w,
    }
}

/// Dynamical field `(-sx, -sy)` sampled along the ring.
pub fn bis_field(ring: &Ring, grid: &TaspGrid) -> Vec<[f64; 2]> {
    ring.path()
        .iter()
        .map(|p| {
            let s = grid.sample(p[0], p[1]);
            [-s.sx, -s.sy]
        })
        .collect()
}

/// Gradient field `-(d sx, d sy)/dk_perp` along the outward normal, central
/// differences with one grid spacing.
pub fn sis_gradient_field(ring: &Ring, grid: &TaspGrid) -> Result<Vec<[f64; 2]>> {
    let path = ring.path();
    let normals = outward_normals(&path)?;
    let d = grid.spacing();
    Ok(path
        .iter()
        .zip(&normals)
        .map(|(p, nv)| {
            let a = grid.sample(p[0] + d * nv[0], p[1] + d * nv[1]);
            let b = grid.sample(p[0] - d * nv[0], p[1] - d * nv[1]);
            [-(a.sx - b.sx) / (2.0 * d), -(a.sy - b.sy) / (2.0 * d)]
        })
        .collect())
}

/// Invariant read from the dynamical field on a BIS.
pub fn winding_on_bis(ring: &Ring, grid: &TaspGrid) -> Result<i32> {
    if ring.kind != RingKind::Bis {
        return Err(Error::RingKind(format!("winding_on_bis called on {}", ring.kind)));
    }
    let side = match ring.inverted_side {
        Some(s) => s,
        None => positive_side(ring, grid)?,
    };
    Ok(signed_invariant(quantized_winding(&bis_field(ring, grid))?, side))
}

/// Invariant read from the normal-gradient field on an FSIS or ISIS.
///
/// Uses `ring.inverted_side` when set (the FSIS case) and the `sz > 0` side
/// otherwise.
pub fn winding_on_sis(ring: &Ring, grid: &TaspGrid) -> Result<i32> {
    if !ring.kind.is_sis() {
        return Err(Error::RingKind(format!("winding_on_sis called on {}", ring.kind)));
    }
    if !ring.contractible {
        return Err(Error::OpenRing);
    }
    let side = match ring.inverted_side {
        Some(s) => s,
        None => positive_side(ring, grid)?,
    };
    Ok(signed_invariant(quantized_winding(&sis_gradient_field(ring, grid)?)?, side))
}

/// Smallest cosine between the SIS gradient field and `h_so`, after fixing
/// one global sign for the ring by majority.
pub fn gradient_alignment(ring: &Ring, grid: &TaspGrid, params: &ModelParams) -> Result<f64> {
    let path = ring.path();
    let g = sis_gradient_field(ring, grid)?;
    let cos: Vec<f64> = path
        .iter()
        .zip(&g)
        .map(|(p, v)| {
            let (hx, hy) = params.variant.spin_orbit(params.t_so, Momentum::new(p[0], p[1]));
            let den = v[0].hypot(v[1]) * hx.hypot(hy);
            if den > 0.0 {
                (v[0] * hx + v[1] * hy) / den
            } else {
                0.0
            }
        })
        .collect();
    let sign = if cos.iter().filter(|c| **c > 0.0).count() * 2 >= cos.len() { 1.0 } else { -1.0 };
    Ok(cos.iter().map(|c| sign * c).fold(f64::INFINITY, f64::min))
}

/// Fills `inverted_side` and `winding` on every ring of a classified set.
pub fn annotate_windings(rings: &mut [Ring], grid: &TaspGrid) {
    for r in rings.iter_mut() {
        if r.kind != RingKind::Fsis && r.contractible {
            r.inverted_side = positive_side(r, grid).ok();
        }
    }
    // an FSIS inherits the side of its nearest BIS
    let bis: Vec<(Vec<[f64; 2]>, Option<Side>)> =
        rings.iter().filter(|r| r.kind == RingKind::Bis).map(|r| (r.path(), r.inverted_side)).collect();
    for r in rings.iter_mut().filter(|r| r.kind == RingKind::Fsis) {
        let p = r.path();
        r.inverted_side = bis
            .iter()
            .min_by(|a, b| super::contour::hausdorff(&p, &a.0).total_cmp(&super::contour::hausdorff(&p, &b.0)))
            .and_then(|b| b.1);
        if r.inverted_side.is_none() && r.contractible {
            r.inverted_side = positive_side(r, grid).ok();
        }
    }
    for r in rings.iter_mut() {
        let w = if !r.contractible {
            Err(Error::OpenRing)
        } else if r.kind == RingKind::Bis {
            winding_on_bis(r, grid)
        } else {
            winding_on_sis(r, grid)
        };
        match w {
            Ok(w) => {
                r.winding = Some(w);
                r.winding_error = None;
            }
            Err(e) => {
                r.winding = None;
                r.winding_error = Some(e.to_string());
            }
        }
    }
}
