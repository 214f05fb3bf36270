//! Ring records and the BIS / FSIS / ISIS labelling.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::contour::{centroid, hausdorff, recenter, Contour, ContourFamily};
use crate::dynamics::TaspGrid;
use crate::model::{wrap_delta, wrap_k, Momentum};

/// A ring is spin-inversion-like when its mean in-plane TASP is below this
/// fraction of the grid maximum.
pub const SIS_THRESHOLD_FRACTION: f64 = 0.05;

/// Two SIS rings whose distances to the BIS differ by less than this
/// relative amount make the FSIS choice ambiguous.
pub const AMBIGUITY_FRACTION: f64 = 0.10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum RingKind {
    Bis,
    Fsis,
    Isis,
}

impl RingKind {
    pub fn is_sis(self) -> bool {
        !matches!(self, RingKind::Bis)
    }
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RingKind::Bis => "BIS",
            RingKind::Fsis => "FSIS",
            RingKind::Isis => "ISIS",
        })
    }
}

/// Side of a ring, in the unwrapped plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Interior,
    Exterior,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ring {
    /// Ordered vertices (counterclockwise for contractible rings), wrapped into
    /// the zone; the closing edge is implicit.
    pub points: Vec<Momentum>,
    pub kind: RingKind,
    pub winding: Option<i32>,
    /// Why the winding is missing, when it is.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub winding_error: Option<String>,
    pub mean_inplane: f64,
    pub centroid: Momentum,
    pub contractible: bool,
    pub family: ContourFamily,
    /// Side on which the sum of enclosed charges is read; see `winding`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverted_side: Option<Side>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enclosed_charge: Option<i32>,
}

impl Ring {
    /// Unwrapped vertices with the centroid in `[-pi, pi)^2`.
    pub fn path(&self) -> Vec<[f64; 2]> {
        let mut out = Vec::with_capacity(self.points.len());
        let Some(first) = self.points.first() else { return out };
        let mut cur = [first.kx, first.ky];
        out.push(cur);
        for w in self.points.windows(2) {
            cur = [cur[0] + wrap_delta(w[1].kx - w[0].kx), cur[1] + wrap_delta(w[1].ky - w[0].ky)];
            out.push(cur);
        }
        recenter(&mut out);
        out
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Distance from the centroid to the zone origin, measured on the torus.
    pub fn origin_distance(&self) -> f64 {
        wrap_delta(self.centroid.kx).hypot(wrap_delta(self.centroid.ky))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RingSet {
    pub rings: Vec<Ring>,
    /// Set when the FSIS choice was a near tie.
    pub ambiguous: bool,
    /// Absolute in-plane threshold separating SIS-like from BIS rings.
    pub sis_threshold: f64,
}

/// Mean bilinear in-plane magnitude over a path.
pub fn mean_inplane(grid: &TaspGrid, path: &[[f64; 2]]) -> f64 {
    if path.is_empty() {
        return 0.0;
    }
    path.iter().map(|p| grid.sample(p[0], p[1]).inplane()).sum::<f64>() / path.len() as f64
}

fn to_ring(c: &Contour, kind: RingKind, mean: f64) -> Ring {
    let cen = centroid(&c.path);
    Ring {
        points: c.path.iter().map(|p| Momentum { kx: wrap_k(p[0]), ky: wrap_k(p[1]) }).collect(),
        kind,
        winding: None,
        winding_error: None,
        mean_inplane: mean,
        centroid: Momentum { kx: wrap_k(cen[0]), ky: wrap_k(cen[1]) },
        contractible: c.contractible,
        family: c.family,
        inverted_side: None,
        enclosed_charge: None,
    }
}

/// Labels contours as BIS, FSIS or ISIS and sorts them by distance from the origin.
pub fn classify_rings(grid: &TaspGrid, contours: &[Contour]) -> RingSet {
    let tau = SIS_THRESHOLD_FRACTION * grid.max_inplane();
    let means: Vec<f64> = contours.iter().map(|c| mean_inplane(grid, &c.path)).collect();
    let is_sis: Vec<bool> = means.iter().map(|&m| m < tau).collect();
    let bis: Vec<usize> = (0..contours.len()).filter(|&i| !is_sis[i]).collect();
    let sis: Vec<usize> = (0..contours.len()).filter(|&i| is_sis[i]).collect();

    let mut kinds: Vec<RingKind> = is_sis.iter().map(|&s| if s { RingKind::Isis } else { RingKind::Bis }).collect();
    let mut ambiguous = false;
    if !bis.is_empty() && !sis.is_empty() {
        let dist: Vec<f64> = sis
            .iter()
            .map(|&i| {
                bis.iter().map(|&b| hausdorff(&contours[i].path, &contours[b].path)).fold(f64::INFINITY, f64::min)
            })
            .collect();
        let mut order: Vec<usize> = (0..sis.len()).collect();
        order.sort_by(|&a, &b| dist[a].total_cmp(&dist[b]));
        kinds[sis[order[0]]] = RingKind::Fsis;
        if order.len() > 1 {
            let (d0, d1) = (dist[order[0]], dist[order[1]]);
            if d1 - d0 <= AMBIGUITY_FRACTION * d1 {
                ambiguous = true;
            }
        }
    }

    let mut rings: Vec<Ring> = contours.iter().zip(kinds).zip(means).map(|((c, k), m)| to_ring(c, k, m)).collect();
    rings.sort_by(|a, b| a.origin_distance().total_cmp(&b.origin_distance()).then(a.kind.cmp(&b.kind)));
    RingSet { rings, ambiguous, sis_threshold: tau }
}

/// Intersections of a ring with the zone diagonal `kx = ky`, as `kx` values.
pub fn diagonal_crossings(ring: &Ring) -> Vec<f64> {
    let path = ring.path();
    let n = path.len();
    let mut out = Vec::new();
    for i in 0..n {
        let p = path[i];
        let q = path[(i + 1) % n];
        let (a, b) = (p[1] - p[0], q[1] - q[0]);
        // the diagonal and its images ky = kx + 2 pi m
        for m in [-2.0, -1.0, 0.0, 1.0, 2.0] {
            let (a, b) = (a - 2.0 * PI * m, b - 2.0 * PI * m);
            if (a >= 0.0) != (b >= 0.0) {
                let t = a / (a - b);
                out.push(wrap_k(p[0] + t * (q[0] - p[0])));
            }
        }
    }
    out.sort_by(f64::total_cmp);
    out
}
