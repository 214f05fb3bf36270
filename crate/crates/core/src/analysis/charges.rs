//! Topological charges: vortices of the spin-orbit field `h_so = (hx, hy)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::rings::{Ring, Side};
use super::winding::raw_winding;
use crate::error::{Error, Result};
use crate::model::{ModelParams, Momentum};

/// Radius of the loop on which the local vortex number is measured.
pub const CHARGE_RADIUS: f64 = 0.1;

/// Calibrated once: the vortex of `(sin kx, sin ky)` at the origin has
/// counterclockwise winding `+1` and carries charge `-1`.
pub const CHARGE_SIGN: i32 = -1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Charge {
    pub location: Momentum,
    pub charge: i32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RingCharge {
    /// Index into the ring list the report was built from.
    pub ring: usize,
    /// Charge sum on the ring's interior.
    pub inside: i32,
    /// Charge sum on the ring's inverted side, when that side is known.
    pub enclosed: Option<i32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChargeReport {
    pub charges: Vec<Charge>,
    pub per_ring_enclosed: Vec<RingCharge>,
}

/// Zeros of `h_so` with their charges.
pub fn topological_charges(params: &ModelParams) -> Result<Vec<Charge>> {
    if !(params.t_so > 0.0) {
        return Err(Error::InvalidParams("charges need t_so > 0".into()));
    }
    Ok(params
        .variant
        .spin_orbit_zeros()
        .into_iter()
        .map(|k| {
            let vs: Vec<[f64; 2]> = (0..64)
                .map(|i| {
                    let a = 2.0 * PI * i as f64 / 64.0;
                    let (hx, hy) = params.variant.spin_orbit(
                        params.t_so,
                        Momentum::new(k.kx + CHARGE_RADIUS * a.cos(), k.ky + CHARGE_RADIUS * a.sin()),
                    );
                    [hx, hy]
                })
                .collect();
            Charge { location: k, charge: CHARGE_SIGN * raw_winding(&vs).round() as i32 }
        })
        .collect())
}

/// Even-odd test in the unwrapped plane.
pub fn point_in_polygon(p: [f64; 2], path: &[[f64; 2]]) -> bool {
    let n = path.len();
    let mut inside = false;
    let mut j = n - 1;
    for i in 0..n {
        let (a, b) = (path[i], path[j]);
        if (a[1] > p[1]) != (b[1] > p[1]) {
            let x = b[0] + (p[1] - b[1]) * (a[0] - b[0]) / (a[1] - b[1]);
            if p[0] < x {
                inside = !inside;
            }
        }
        j = i;
    }
    inside
}

fn segment_distance(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
    let l2 = dx * dx + dy * dy;
    let t = if l2 > 0.0 { (((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / l2).clamp(0.0, 1.0) } else { 0.0 };
    (p[0] - a[0] - t * dx).hypot(p[1] - a[1] - t * dy)
}

/// Periodic images of `k` that can fall inside a ring recentred into the zone.
fn images(k: Momentum) -> impl Iterator<Item = [f64; 2]> {
    [-2.0, -1.0, 0.0, 1.0, 2.0].into_iter().flat_map(move |a| {
        [-2.0, -1.0, 0.0, 1.0, 2.0].into_iter().map(move |b| [k.kx + 2.0 * PI * a, k.ky + 2.0 * PI * b])
    })
}

/// Charge sums inside each ring and on its inverted side.
///
/// Fails when a charge sits within `spacing` of a ring, where the count would
/// hinge on sub-grid geometry.
pub fn charge_report(params: &ModelParams, rings: &[Ring], spacing: f64) -> Result<ChargeReport> {
    let charges = topological_charges(params)?;
    let total: i32 = charges.iter().map(|c| c.charge).sum();
    let mut per_ring = Vec::with_capacity(rings.len());
    for (idx, ring) in rings.iter().enumerate() {
        if !ring.contractible {
            return Err(Error::OpenRing);
        }
        let path = ring.path();
        let mut inside = 0;
        for c in &charges {
            for p in images(c.location) {
                let n = path.len();
                let near = (0..n).any(|i| segment_distance(p, path[i], path[(i + 1) % n]) < spacing);
                if near {
                    return Err(Error::ChargeOnRing { kx: c.location.kx, ky: c.location.ky });
                }
                if point_in_polygon(p, &path) {
                    inside += c.charge;
                }
            }
        }
        let enclosed = ring.inverted_side.map(|s| match s {
            Side::Interior => inside,
            Side::Exterior => total - inside,
        });
        per_ring.push(RingCharge { ring: idx, inside, enclosed });
    }
    Ok(ChargeReport { charges, per_ring_enclosed: per_ring })
}
