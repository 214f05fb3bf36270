//! File formats: grid CSV, ring JSON, sweep CSV and PGM heatmaps.

use std::io::{self, Write};

use serde::Serialize;

use crate::analysis::{ContourFamily, GSweepRow, Ring, RingKind, TsoSweepRow};
use crate::dynamics::TaspGrid;
use crate::model::Momentum;

/// Nine significant digits.
pub fn fmt9(x: f64) -> String {
    format!("{x:.8e}")
}

fn csv_err(e: csv::Error) -> io::Error {
    io::Error::other(e)
}

/// Columns `kx, ky, sx, sy, sz`, one row per node, `kx` outer.
pub fn write_grid_csv<W: Write>(grid: &TaspGrid, w: W) -> io::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["kx", "ky", "sx", "sy", "sz"]).map_err(csv_err)?;
    for ix in 0..grid.grid_n {
        for iy in 0..grid.grid_n {
            let k = grid.momentum(ix, iy);
            let s = grid.get(ix, iy);
            out.write_record([fmt9(k.kx), fmt9(k.ky), fmt9(s.sx), fmt9(s.sy), fmt9(s.sz)]).map_err(csv_err)?;
        }
    }
    out.flush()
}

#[derive(Serialize)]
struct RingOut<'a> {
    kind: RingKind,
    winding: Option<i32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    winding_error: &'a Option<String>,
    enclosed_charge: Option<i32>,
    contractible: bool,
    family: ContourFamily,
    mean_inplane: f64,
    centroid: Momentum,
    points: &'a [Momentum],
}

/// Ring list as pretty JSON: kind, winding and the ordered points of each ring.
pub fn rings_json(rings: &[Ring]) -> String {
    let out: Vec<RingOut> = rings
        .iter()
        .map(|r| RingOut {
            kind: r.kind,
            winding: r.winding,
            winding_error: &r.winding_error,
            enclosed_charge: r.enclosed_charge,
            contractible: r.contractible,
            family: r.family,
            mean_inplane: r.mean_inplane,
            centroid: r.centroid,
            points: &r.points,
        })
        .collect();
    serde_json::to_string_pretty(&out).expect("rings serialize")
}

/// Binary PGM of one component, `ky` increasing upwards, `[-1, 1] -> [0, 255]`.
pub fn write_pgm<W: Write>(grid: &TaspGrid, component: usize, mut w: W) -> io::Result<()> {
    let n = grid.grid_n;
    write!(w, "P5\n{n} {n}\n255\n")?;
    let mut buf = Vec::with_capacity(n * n);
    for iy in (0..n).rev() {
        for ix in 0..n {
            let v = grid.get(ix, iy).as_array()[component].clamp(-1.0, 1.0);
            buf.push(((v + 1.0) * 127.5).round() as u8);
        }
    }
    w.write_all(&buf)
}

fn join(xs: &[f64]) -> String {
    xs.iter().map(|x| fmt9(*x)).collect::<Vec<_>>().join(";")
}

pub fn write_g_sweep_csv<W: Write>(rows: &[GSweepRow], w: W) -> io::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["g", "bis", "fsis", "isis", "merged", "process", "error"]).map_err(csv_err)?;
    for r in rows {
        out.write_record([
            fmt9(r.g),
            join(&r.bis),
            join(&r.fsis),
            join(&r.isis),
            join(&r.merged),
            r.process.map(|p| p.to_string()).unwrap_or_default(),
            r.error.clone().unwrap_or_default(),
        ])
        .map_err(csv_err)?;
    }
    out.flush()
}

pub fn write_tso_sweep_csv<W: Write>(rows: &[TsoSweepRow], w: W) -> io::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record([
        "t_so",
        "ring_count",
        "signature",
        "noncontractible",
        "sis_diagonal_crossings",
        "process",
        "error",
    ])
    .map_err(csv_err)?;
    for r in rows {
        out.write_record([
            fmt9(r.t_so),
            r.ring_count.to_string(),
            r.signature.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(";"),
            r.noncontractible.to_string(),
            r.sis_diagonal_crossings.to_string(),
            r.process.map(|p| p.to_string()).unwrap_or_default(),
            r.error.clone().unwrap_or_default(),
        ])
        .map_err(csv_err)?;
    }
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::tasp_grid;
    use crate::model::ModelParams;

    #[test]
    fn nine_digits() {
        assert_eq!(fmt9(1.0), "1.00000000e0");
        assert_eq!(fmt9(-0.123456789123), "-1.23456789e-1");
        let back: f64 = fmt9(std::f64::consts::PI).parse().unwrap();
        assert!((back - std::f64::consts::PI).abs() < 1e-8);
    }

    #[test]
    fn csv_and_pgm_shapes() {
        let g = tasp_grid(&ModelParams::sudden(1.0, 0.2, 20.0, -1.0, 100.0), 5).unwrap();
        let mut buf = Vec::new();
        write_grid_csv(&g, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "kx,ky,sx,sy,sz");
        assert_eq!(lines.len(), 26);
        assert!(lines[1].starts_with("-3.14159265e0,-3.14159265e0,"));

        let mut img = Vec::new();
        write_pgm(&g, 2, &mut img).unwrap();
        assert!(img.starts_with(b"P5\n5 5\n255\n"));
        assert_eq!(img.len(), b"P5\n5 5\n255\n".len() + 25);
    }
}
