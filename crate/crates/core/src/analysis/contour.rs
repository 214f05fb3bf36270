//! Zero contours of the TASP `z` component on the periodic Brillouin-zone grid.
//!
//! `sz = P * hz/eps` vanishes on two kinds of lines: where the occupation
//! difference `P` changes sign (spin inversion) and where the final field's
//! `hz` does (band inversion). Near a tangency the product has a double zero
//! that plain marching squares cannot see, so the two factors are separated
//! first. The TASP vector is `P h^/eps` up to the sign of `P`, which is fixed
//! by propagating `sign(s_i . s_j)` along a maximum spanning tree of grid
//! edges. The contours of both factors are then extracted and pairs that
//! coincide within a grid spacing are merged.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::dynamics::TaspGrid;
use crate::error::{Error, Result};
use crate::model::wrap_delta;

/// Which factor of `sz` a contour is a zero line of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ContourFamily {
    /// `P_u - P_d = 0`
    Occupation,
    /// `hz / eps = 0`
    Axis,
}

/// Closed polyline in unwrapped coordinates; the closing edge is implicit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Contour {
    pub path: Vec<[f64; 2]>,
    /// False for loops that wind around the torus.
    pub contractible: bool,
    pub family: ContourFamily,
}

impl Contour {
    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        self.path.is_empty()
    }

    pub fn centroid(&self) -> [f64; 2] {
        centroid(&self.path)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContourSet {
    pub contours: Vec<Contour>,
    /// Non-tree edges whose sign disagrees with the gauge; nonzero means the
    /// factorization is unreliable somewhere.
    pub frustrated_edges: usize,
}

/// Contours shorter than this many segments are dropped as noise.
pub const MIN_SEGMENTS: usize = 4;

pub fn centroid(path: &[[f64; 2]]) -> [f64; 2] {
    let n = path.len().max(1) as f64;
    let (sx, sy) = path.iter().fold((0.0, 0.0), |(a, b), p| (a + p[0], b + p[1]));
    [sx / n, sy / n]
}

/// Shoelace area; positive for counterclockwise loops.
pub fn signed_area(path: &[[f64; 2]]) -> f64 {
    let n = path.len();
    let mut a = 0.0;
    for i in 0..n {
        let p = path[i];
        let q = path[(i + 1) % n];
        a += p[0] * q[1] - q[0] * p[1];
    }
    0.5 * a
}

/// Shifts a path by multiples of `2 pi` so its centroid lies in `[-pi, pi)^2`.
pub fn recenter(path: &mut [[f64; 2]]) {
    let c = centroid(path);
    let shift = |x: f64| -2.0 * PI * ((x + PI) / (2.0 * PI)).floor();
    let (dx, dy) = (shift(c[0]), shift(c[1]));
    for p in path.iter_mut() {
        p[0] += dx;
        p[1] += dy;
    }
}

fn directed_hausdorff(a: &[[f64; 2]], b: &[[f64; 2]], dx: f64, dy: f64) -> f64 {
    let mut worst: f64 = 0.0;
    for p in a {
        let mut best = f64::INFINITY;
        for q in b {
            let d = (p[0] - q[0] - dx).hypot(p[1] - q[1] - dy);
            if d < best {
                best = d;
            }
        }
        worst = worst.max(best);
    }
    worst
}

/// Symmetric Hausdorff distance between vertex sets, minimized over the
/// periodic images of `b`.
pub fn hausdorff(a: &[[f64; 2]], b: &[[f64; 2]]) -> f64 {
    let mut best = f64::INFINITY;
    for sx in [-1.0, 0.0, 1.0] {
        for sy in [-1.0, 0.0, 1.0] {
            let (dx, dy) = (-2.0 * PI * sx, -2.0 * PI * sy);
            let d = directed_hausdorff(a, b, dx, dy).max(directed_hausdorff(b, a, -dx, -dy));
            best = best.min(d);
        }
    }
    best
}

/// Factor fields `(occupation, axis)` on the grid nodes, each defined up to
/// one global sign, plus the frustration count.
pub fn factor_fields(grid: &TaspGrid) -> (Vec<f64>, Vec<f64>, usize) {
    let n = grid.grid_n;
    let nodes = n * n;
    let s: Vec<[f64; 3]> = grid.data.iter().map(|v| v.as_array()).collect();
    let dot = |i: usize, j: usize| s[i][0] * s[j][0] + s[i][1] * s[j][1] + s[i][2] * s[j][2];
    let neighbours = |i: usize| {
        let (ix, iy) = (i / n, i % n);
        [((ix + 1) % n) * n + iy, ((ix + n - 1) % n) * n + iy, ix * n + (iy + 1) % n, ix * n + (iy + n - 1) % n]
    };

    // Prim's algorithm on |s_i . s_j|; ties resolve by node index, so the
    // result is deterministic
    let mut sigma = vec![0i8; nodes];
    let mut parent = vec![usize::MAX; nodes];
    let mut heap: BinaryHeap<(u64, Reverse<usize>, Reverse<usize>)> = BinaryHeap::new();
    sigma[0] = 1;
    for j in neighbours(0) {
        heap.push((dot(0, j).abs().to_bits(), Reverse(j), Reverse(0)));
    }
    while let Some((_, Reverse(j), Reverse(i))) = heap.pop() {
        if sigma[j] != 0 {
            continue;
        }
        sigma[j] = if dot(i, j) >= 0.0 { sigma[i] } else { -sigma[i] };
        parent[j] = i;
        for k in neighbours(j) {
            if sigma[k] == 0 {
                heap.push((dot(j, k).abs().to_bits(), Reverse(k), Reverse(j)));
            }
        }
    }

    let scale = s.iter().map(|v| v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).fold(0.0, f64::max);
    let mut frustrated = 0;
    for i in 0..nodes {
        for j in [neighbours(i)[0], neighbours(i)[2]] {
            if parent[j] == i || parent[i] == j {
                continue;
            }
            let d = dot(i, j);
            if d.abs() > 1e-6 * scale && (d > 0.0) != (sigma[i] == sigma[j]) {
                frustrated += 1;
            }
        }
    }

    let mut occ = vec![0.0; nodes];
    let mut axis = vec![0.0; nodes];
    for i in 0..nodes {
        let m = (s[i][0] * s[i][0] + s[i][1] * s[i][1] + s[i][2] * s[i][2]).sqrt();
        let sg = sigma[i] as f64;
        occ[i] = sg * m;
        axis[i] = if m > 0.0 { sg * s[i][2] / m } else { 0.0 };
    }
    (occ, axis, frustrated)
}

/// Marching squares on an `n x n` periodic grid with nodes at `origin + i h`.
///
/// Values `>= 0` count as inside. Saddle cells are split according to the
/// mean of the four corners. Returns `(path, contractible)` per loop, with
/// contractible loops oriented counterclockwise and recentred.
pub fn periodic_marching_squares(f: &[f64], n: usize, origin: f64, h: f64) -> Vec<(Vec<[f64; 2]>, bool)> {
    assert_eq!(f.len(), n * n);
    let val = |ix: usize, iy: usize| f[(ix % n) * n + (iy % n)];
    let inside = |ix: usize, iy: usize| val(ix, iy) >= 0.0;
    // edge id: 2 * node + dir, dir 0 runs +x from the node, dir 1 runs +y
    let edge = |ix: usize, iy: usize, dir: usize| 2 * ((ix % n) * n + (iy % n)) + dir;
    let edge_point = |e: usize| -> [f64; 2] {
        let node = e / 2;
        let (ix, iy) = (node / n, node % n);
        let (jx, jy) = if e.is_multiple_of(2) { (ix + 1, iy) } else { (ix, iy + 1) };
        let (a, b) = (val(ix, iy), val(jx, jy));
        let t = a / (a - b);
        let (x0, y0) = (origin + ix as f64 * h, origin + iy as f64 * h);
        if e.is_multiple_of(2) {
            [x0 + t * h, y0]
        } else {
            [x0, y0 + t * h]
        }
    };

    let mut nb = vec![[usize::MAX; 2]; 2 * n * n];
    let mut link = |a: usize, b: usize| {
        for (e, o) in [(a, b), (b, a)] {
            let slot = &mut nb[e];
            if slot[0] == usize::MAX {
                slot[0] = o;
            } else {
                slot[1] = o;
            }
        }
    };
    for ix in 0..n {
        for iy in 0..n {
            let a = inside(ix, iy);
            let b = inside(ix + 1, iy);
            let c = inside(ix + 1, iy + 1);
            let d = inside(ix, iy + 1);
            let bottom = edge(ix, iy, 0);
            let right = edge(ix + 1, iy, 1);
            let top = edge(ix, iy + 1, 0);
            let left = edge(ix, iy, 1);
            let mut cut = Vec::with_capacity(4);
            if a != b {
                cut.push(bottom);
            }
            if b != c {
                cut.push(right);
            }
            if c != d {
                cut.push(top);
            }
            if d != a {
                cut.push(left);
            }
            match cut.len() {
                0 => {}
                2 => link(cut[0], cut[1]),
                4 => {
                    let centre = 0.25 * (val(ix, iy) + val(ix + 1, iy) + val(ix + 1, iy + 1) + val(ix, iy + 1));
                    if (centre >= 0.0) == a {
                        // a and c joined through the centre: cut off b and d
                        link(bottom, right);
                        link(top, left);
                    } else {
                        link(left, bottom);
                        link(right, top);
                    }
                }
                _ => unreachable!("a cell boundary crosses an even number of times"),
            }
        }
    }

    let mut visited = vec![false; 2 * n * n];
    let mut loops = Vec::new();
    for start in 0..2 * n * n {
        if visited[start] || nb[start][0] == usize::MAX {
            continue;
        }
        let mut path = vec![edge_point(start)];
        visited[start] = true;
        let (mut prev, mut cur) = (start, nb[start][0]);
        while cur != start {
            visited[cur] = true;
            let base = edge_point(cur);
            let last = *path.last().unwrap();
            let pb = edge_point(prev);
            path.push([last[0] + wrap_delta(base[0] - pb[0]), last[1] + wrap_delta(base[1] - pb[1])]);
            let next = if nb[cur][0] == prev { nb[cur][1] } else { nb[cur][0] };
            prev = cur;
            cur = next;
        }
        let last = *path.last().unwrap();
        let pb = edge_point(prev);
        let s = edge_point(start);
        let close = [last[0] + wrap_delta(s[0] - pb[0]) - path[0][0], last[1] + wrap_delta(s[1] - pb[1]) - path[0][1]];
        let contractible = close[0].abs() < PI && close[1].abs() < PI;
        if path.len() < MIN_SEGMENTS {
            continue;
        }
        if contractible {
            if signed_area(&path) < 0.0 {
                path.reverse();
            }
            recenter(&mut path);
        }
        loops.push((path, contractible));
    }
    loops
}

/// Zero contours of `sz`, split by factor and with coincident pairs merged.
pub fn extract_zero_contours(grid: &TaspGrid) -> Result<ContourSet> {
    if grid.grid_n < 41 {
        return Err(Error::GridTooSmall(format!("contour extraction needs grid_n >= 41, got {}", grid.grid_n)));
    }
    let (occ, axis, frustrated_edges) = factor_fields(grid);
    let (n, h) = (grid.grid_n, grid.spacing());
    let build = |f: &[f64], family| {
        periodic_marching_squares(f, n, -PI, h)
            .into_iter()
            .map(|(path, contractible)| Contour { path, contractible, family })
            .collect::<Vec<_>>()
    };
    let mut contours = build(&occ, ContourFamily::Occupation);
    let axis_contours = build(&axis, ContourFamily::Axis);
    let n_occ = contours.len();
    for c in axis_contours {
        // a band-inversion line lying on top of a spin-inversion line is the
        // same zero of sz; keep the occupation one, on which all of s vanishes
        let duplicate = contours[..n_occ].iter().any(|o| hausdorff(&o.path, &c.path) < h);
        if !duplicate {
            contours.push(c);
        }
    }
    Ok(ContourSet { contours, frustrated_edges })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disk_field(n: usize, cx: f64, cy: f64, r: f64) -> Vec<f64> {
        let h = 2.0 * PI / n as f64;
        let mut f = vec![0.0; n * n];
        for ix in 0..n {
            for iy in 0..n {
                let x = wrap_delta(-PI + ix as f64 * h - cx);
                let y = wrap_delta(-PI + iy as f64 * h - cy);
                f[ix * n + iy] = r - x.hypot(y);
            }
        }
        f
    }

    #[test]
    fn circle_is_ccw_and_accurate() {
        let n = 81;
        let h = 2.0 * PI / n as f64;
        let loops = periodic_marching_squares(&disk_field(n, 0.3, -0.2, 1.0), n, -PI, h);
        assert_eq!(loops.len(), 1);
        let (path, contractible) = &loops[0];
        assert!(*contractible);
        assert!(signed_area(path) > 0.0);
        for p in path {
            let r = (p[0] - 0.3).hypot(p[1] + 0.2);
            assert!((r - 1.0).abs() < 0.01, "r = {r}");
        }
        for i in 0..path.len() {
            let q = path[(i + 1) % path.len()];
            assert!((path[i][0] - q[0]).hypot(path[i][1] - q[1]) < 2.0 * h);
        }
    }

    #[test]
    fn circle_across_the_zone_corner_is_unwrapped() {
        let n = 61;
        let h = 2.0 * PI / n as f64;
        let loops = periodic_marching_squares(&disk_field(n, PI, PI, 1.2), n, -PI, h);
        assert_eq!(loops.len(), 1);
        let (path, contractible) = &loops[0];
        assert!(*contractible);
        let c = centroid(path);
        assert!((c[0].abs() - PI).abs() < 0.05 && (c[1].abs() - PI).abs() < 0.05, "{c:?}");
        assert!((signed_area(path) - PI * 1.44).abs() < 0.05);
    }

    #[test]
    fn stripe_is_noncontractible() {
        let n = 41;
        let h = 2.0 * PI / n as f64;
        let mut f = vec![0.0; n * n];
        for ix in 0..n {
            for iy in 0..n {
                f[ix * n + iy] = (-PI + ix as f64 * h).cos();
            }
        }
        let loops = periodic_marching_squares(&f, n, -PI, h);
        assert_eq!(loops.len(), 2);
        assert!(loops.iter().all(|(_, c)| !c));
    }

    #[test]
    fn saddle_follows_centre_value() {
        // four small bumps meeting at a cell: the centre sign decides the topology
        let n = 41;
        let h = 2.0 * PI / n as f64;
        let mut f = vec![-1.0; n * n];
        f[20 * n + 20] = 1.0;
        f[21 * n + 21] = 1.0;
        f[20 * n + 21] = -0.5;
        f[21 * n + 20] = -0.5;
        // centre mean 0.25: joined, one loop around both nodes
        let loops = periodic_marching_squares(&f, n, -PI, h);
        assert_eq!(loops.len(), 1);
        f[20 * n + 21] = -1.5;
        f[21 * n + 20] = -1.5;
        let loops = periodic_marching_squares(&f, n, -PI, h);
        assert_eq!(loops.len(), 2);
    }

    #[test]
    fn hausdorff_uses_periodic_images() {
        let a = vec![[PI - 0.1, 0.0], [PI - 0.1, 0.1]];
        let b = vec![[-PI - 0.1, 0.0], [-PI - 0.1, 0.1]];
        assert!(hausdorff(&a, &b) < 1e-12);
    }
}
