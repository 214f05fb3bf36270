//! End-to-end acceptance checks, one verdict line per criterion.
//!
//! Runs without the libtest harness so the verdicts always reach stdout; the
//! process exits nonzero when any criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use tasp::analysis::sweep::fsis_isis_separation;
use tasp::analysis::{
    analyze, compare_processes, critical_tso, gradient_alignment, sis_g0_diagonal_zeros, sweep_g, sweep_tso, Analysis,
    ProcessLabel, RingKind,
};
use tasp::cli::bundled_config;
use tasp::dynamics::{tasp_grid, tasp_grid_with, tasp_slow_exact, tasp_sudden_closed_form, EvolveOptions, TaspGrid};
use tasp::model::{chern_fukui, static_phase};
use tasp::{ModelParams, ProtocolSign, StartTime, Variant};

// pinned tolerances
const SUDDEN_TOL: f64 = 1e-3;
const SLOW_TOL: f64 = 2e-3;
const TRANSLATION_TOL: f64 = 2e-3;
// the quoted target, not 1/sqrt(2) itself
#[allow(clippy::approx_constant)]
const CRITICAL_TARGET: f64 = 0.7071;
const CRITICAL_TOL: f64 = 1e-4;
const ALIGNMENT_MIN: f64 = 0.99;
/// Wall-clock budget for the 201 x 201 reference run with projection.
const FIG1_BUDGET_S: f64 = 60.0;

struct Case {
    name: &'static str,
    params: ModelParams,
    grid: TaspGrid,
    analysis: Analysis,
    seconds: f64,
}

fn run_config(name: &'static str) -> Result<Case, String> {
    let cfg = bundled_config(name).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let grid = tasp_grid_with(&cfg.model, cfg.grid_n, &cfg.evolve_options()).map_err(|e| e.to_string())?;
    let analysis = analyze(&grid).map_err(|e| e.to_string())?;
    Ok(Case { name, params: cfg.model, grid, analysis, seconds: start.elapsed().as_secs_f64() })
}

fn run_params(name: &'static str, params: ModelParams, n: usize) -> Result<Case, String> {
    let start = Instant::now();
    let grid = tasp_grid(&params, n).map_err(|e| e.to_string())?;
    let analysis = analyze(&grid).map_err(|e| e.to_string())?;
    Ok(Case { name, params, grid, analysis, seconds: start.elapsed().as_secs_f64() })
}

/// `(kind, winding)` pairs in kind order.
fn pattern(a: &Analysis) -> Vec<(RingKind, Option<i32>)> {
    let mut v: Vec<_> = a.rings.iter().map(|r| (r.kind, r.winding)).collect();
    v.sort();
    v
}

fn expect_pattern(c: &Case, want: &[(RingKind, i32)]) -> Result<String, String> {
    let got = pattern(&c.analysis);
    let mut want: Vec<(RingKind, Option<i32>)> = want.iter().map(|&(k, w)| (k, Some(w))).collect();
    want.sort();
    let shown = format!("{} rings {:?}", got.len(), got);
    if got == want {
        Ok(shown)
    } else {
        Err(format!("{}: expected {:?}, got {shown}", c.name, want))
    }
}

fn expect_process(c: &Case, label: ProcessLabel, initial: Option<i32>, fin: Option<i32>) -> Result<String, String> {
    let p = &c.analysis.process;
    if p.label == label && p.initial_invariant == initial && p.final_invariant == fin {
        Ok(format!("{} ({:?}, {:?})", p.label, p.initial_invariant, p.final_invariant))
    } else {
        Err(format!(
            "{}: expected {label} ({initial:?}, {fin:?}), got {} ({:?}, {:?})",
            c.name, p.label, p.initial_invariant, p.final_invariant
        ))
    }
}

fn max_grid_error(grid: &TaspGrid, oracle: impl Fn(usize, usize) -> Result<[f64; 3], String>) -> Result<f64, String> {
    let mut worst = 0.0f64;
    for ix in 0..grid.grid_n {
        for iy in 0..grid.grid_n {
            let want = oracle(ix, iy)?;
            let got = grid.get(ix, iy).as_array();
            for c in 0..3 {
                worst = worst.max((got[c] - want[c]).abs());
            }
        }
    }
    Ok(worst)
}

fn c1(fig1: &Result<Case, String>) -> Result<String, String> {
    let c = fig1.as_ref().map_err(Clone::clone)?;
    let shown = expect_pattern(c, &[(RingKind::Bis, -1), (RingKind::Fsis, -1)])?;
    if c.seconds >= FIG1_BUDGET_S {
        return Err(format!("{shown}, but took {:.1} s (budget {FIG1_BUDGET_S} s)", c.seconds));
    }
    Ok(format!("{shown}, {:.1} s on {} threads", c.seconds, rayon::current_num_threads()))
}

fn c2(fig2: &Result<Case, String>) -> Result<String, String> {
    expect_pattern(fig2.as_ref().map_err(Clone::clone)?, &[(RingKind::Bis, 1), (RingKind::Fsis, 1)])
}

fn c3(c: &Result<Case, String>) -> Result<String, String> {
    let c = c.as_ref().map_err(Clone::clone)?;
    let a = expect_pattern(c, &[(RingKind::Isis, 1)])?;
    let b = expect_process(c, ProcessLabel::TopoToTrivial, Some(1), None)?;
    Ok(format!("{a}, {b}"))
}

fn c4(c: &Result<Case, String>) -> Result<String, String> {
    let c = c.as_ref().map_err(Clone::clone)?;
    let a = expect_pattern(c, &[(RingKind::Bis, 1), (RingKind::Fsis, 1), (RingKind::Isis, -1)])?;
    let b = expect_process(c, ProcessLabel::TopoToTopo, Some(-1), Some(1))?;
    Ok(format!("{a}, {b}"))
}

fn c5(c: &Result<Case, String>) -> Result<String, String> {
    let c = c.as_ref().map_err(Clone::clone)?;
    let a = expect_pattern(c, &[(RingKind::Bis, -1), (RingKind::Fsis, -1), (RingKind::Isis, 1)])?;
    let b = expect_process(c, ProcessLabel::TopoToTopo, Some(1), Some(-1))?;
    Ok(format!("{a}, {b}"))
}

fn c6() -> Result<String, String> {
    let mut worst = 0.0f64;
    for (mi, mf) in [(1.0, -1.0), (20.0, -1.0), (-1.0, -10.0), (3.0, 0.5)] {
        let p = ModelParams::sudden(1.0, 0.2, mi, mf, 5000.0);
        let grid = tasp_grid(&p, 101).map_err(|e| e.to_string())?;
        let err = max_grid_error(&grid, |ix, iy| {
            tasp_sudden_closed_form(grid.momentum(ix, iy), mi, mf, 1.0, 0.2, Variant::Standard)
                .map(|v| v.as_array())
                .map_err(|e| e.to_string())
        })?;
        worst = worst.max(err);
    }
    if worst < SUDDEN_TOL {
        Ok(format!("max |error| {worst:.2e} over 4 quenches on 101x101"))
    } else {
        Err(format!("max |error| {worst:.2e} >= {SUDDEN_TOL:e}"))
    }
}

fn c7() -> Result<String, String> {
    let mut worst = 0.0f64;
    for m in [1.0, -1.0] {
        let p = ModelParams::slow(1.0, 0.2, m, 1.0, ProtocolSign::Plus, StartTime::ZeroPlus, 5000.0);
        let grid = tasp_grid(&p, 81).map_err(|e| e.to_string())?;
        let err = max_grid_error(&grid, |ix, iy| {
            tasp_slow_exact(grid.momentum(ix, iy), &p).map(|v| v.as_array()).map_err(|e| e.to_string())
        })?;
        worst = worst.max(err);
    }
    if worst < SLOW_TOL {
        Ok(format!("max |error| {worst:.2e} for m_z = +-1 on 81x81"))
    } else {
        Err(format!("max |error| {worst:.2e} >= {SLOW_TOL:e}"))
    }
}

fn c8() -> Result<String, String> {
    let plus = bundled_config("fig4a").map_err(|e| e.to_string())?.model;
    let minus = bundled_config("fig4b").map_err(|e| e.to_string())?.model;
    // even size so that k + pi lands on the grid
    let n = 80;
    let gp = tasp_grid(&plus, n).map_err(|e| e.to_string())?;
    let gm = tasp_grid(&minus, n).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for ix in 0..n {
        for iy in 0..n {
            let a = gp.get(ix, iy).as_array();
            let b = gm.get((ix + n / 2) % n, (iy + n / 2) % n).as_array();
            for c in 0..3 {
                worst = worst.max((a[c] + b[c]).abs());
            }
        }
    }
    if worst < TRANSLATION_TOL {
        Ok(format!("max |S+(k) + S-(k+pi)| = {worst:.2e} on 80x80"))
    } else {
        Err(format!("max |S+(k) + S-(k+pi)| = {worst:.2e} >= {TRANSLATION_TOL:e}"))
    }
}

fn c9() -> Result<String, String> {
    let crit = critical_tso(1.0, -1.0, 1.0).map_err(|e| e.to_string())?;
    if (crit - CRITICAL_TARGET).abs() > CRITICAL_TOL {
        return Err(format!("critical_tso = {crit:.6}, outside {CRITICAL_TARGET} +- {CRITICAL_TOL:e}"));
    }
    // m_eff runs 1 -> -1; a small g keeps the rings on the g = 0 locus
    let base = ModelParams::slow(1.0, 0.2, -1.0, 0.01, ProtocolSign::Plus, StartTime::At(0.005), 5000.0);
    let rows =
        sweep_tso(&base, &[crit - 0.05, crit + 0.05], 81, &EvolveOptions::default()).map_err(|e| e.to_string())?;
    let summary: Vec<String> = rows
        .iter()
        .map(|r| {
            format!("t_so {:.3}: {} rings, {} SIS diagonal crossings", r.t_so, r.ring_count, r.sis_diagonal_crossings)
        })
        .collect();
    if let Some(e) = rows.iter().find_map(|r| r.error.clone()) {
        return Err(e);
    }
    let (below, above) = (&rows[0], &rows[1]);
    if below.sis_diagonal_crossings > 0 && above.sis_diagonal_crossings == 0 {
        Ok(format!("critical_tso = {crit:.6}; {}", summary.join("; ")))
    } else {
        Err(format!("signature does not flip: {}", summary.join("; ")))
    }
}

fn nearest(x: f64, ys: &[f64]) -> f64 {
    ys.iter().map(|y| (x - y).abs()).fold(f64::INFINITY, f64::min)
}

fn c10() -> Result<String, String> {
    let cfg = bundled_config("fig4a").map_err(|e| e.to_string())?;
    let line_n = 201;
    let h = 2.0 * PI / line_n as f64;
    let rows = sweep_g(&cfg.model, &[0.01, 0.1, 1.0, 5.0, 10.0], line_n, 41, &EvolveOptions::default())
        .map_err(|e| e.to_string())?;
    if let Some(e) = rows.iter().find_map(|r| r.error.clone()) {
        return Err(e);
    }
    let mut bis = Vec::new();
    for r in &rows[1..] {
        let k = r.bis.iter().copied().filter(|k| *k > 0.0).fold(f64::NAN, f64::max);
        if k.is_nan() {
            return Err(format!("no BIS crossing at g = {}", r.g));
        }
        bis.push(k);
    }
    let spread =
        bis.iter().copied().fold(f64::NEG_INFINITY, f64::max) - bis.iter().copied().fold(f64::INFINITY, f64::min);
    let m_i = cfg.model.m_eff_initial().ok_or("no initial mass")?;
    let zeros = sis_g0_diagonal_zeros(m_i, cfg.model.m_z, cfg.model.t0, cfg.model.t_so, cfg.model.variant, 4001);
    let small = &rows[0];
    let sis: Vec<f64> = small.fsis.iter().chain(&small.isis).copied().collect();
    let locus_dev = sis.iter().map(|&k| nearest(k, &zeros)).fold(0.0, f64::max);
    let sep = fsis_isis_separation(&rows[4]).ok_or("no FSIS/ISIS pair at g = 10")?;
    let shown = format!(
        "BIS spread {spread:.4}, g = 0.01 locus deviation {locus_dev:.4} ({} crossings), g = 10 separation {sep:.4}, h = {h:.4}",
        sis.len()
    );
    if spread < h && !sis.is_empty() && locus_dev < h && sep < 2.0 * h {
        Ok(shown)
    } else {
        Err(shown)
    }
}

fn c11(c: &Result<Case, String>) -> Result<String, String> {
    expect_pattern(c.as_ref().map_err(Clone::clone)?, &[(RingKind::Bis, 3), (RingKind::Fsis, 3), (RingKind::Isis, -1)])
}

fn c12(cases: &[&Result<Case, String>]) -> Result<String, String> {
    let mut checked = 0;
    for (variant, ms) in [
        (Variant::Standard, [-3.0, -1.5, -0.5, 0.5, 1.5, 3.0]),
        (Variant::HighChern, [-2.5, -1.5, -0.5, 0.5, 1.5, 2.5]),
    ] {
        let p = ModelParams::sudden(1.0, 0.2, 0.0, 0.0, 100.0).with_variant(variant);
        for m in ms {
            let lattice = chern_fukui(m, &p, 60).map_err(|e| e.to_string())?;
            let phase = static_phase(m, 1.0, variant).map_err(|e| e.to_string())?.chern;
            if lattice != phase {
                return Err(format!("{variant:?} m_eff {m}: lattice {lattice}, phase diagram {phase}"));
            }
            checked += 1;
        }
    }
    let mut rings = 0;
    let mut worst_cos = f64::INFINITY;
    for c in cases {
        let c = c.as_ref().map_err(Clone::clone)?;
        for r in &c.analysis.rings {
            if r.enclosed_charge.is_none() || r.enclosed_charge != r.winding {
                return Err(format!(
                    "{} {}: winding {:?}, enclosed charge {:?}",
                    c.name, r.kind, r.winding, r.enclosed_charge
                ));
            }
            rings += 1;
            if r.kind.is_sis() {
                let cos = gradient_alignment(r, &c.grid, &c.params).map_err(|e| e.to_string())?;
                worst_cos = worst_cos.min(cos);
            }
        }
    }
    if worst_cos > ALIGNMENT_MIN {
        Ok(format!("{checked} Chern numbers agree; duality on {rings} rings; min SIS cosine {worst_cos:.4}"))
    } else {
        Err(format!("min SIS gradient cosine {worst_cos:.4} <= {ALIGNMENT_MIN}"))
    }
}

fn c13() -> Result<String, String> {
    let slow_b = run_config("fig6b").map(|c| c.analysis.process)?;
    let slow_c = run_config("fig6c").map(|c| c.analysis.process)?;
    let slow = compare_processes(&slow_b, &slow_c);
    if slow_b.label != ProcessLabel::TrivialToTopo
        || slow_c.label != ProcessLabel::TopoToTrivial
        || !slow.distinguishable
    {
        return Err(format!("slow pair read as {} / {}", slow_b.label, slow_c.label));
    }
    // the same initial and final masses, quenched suddenly
    let mi_b = bundled_config("fig6b").map_err(|e| e.to_string())?.model;
    let mi_c = bundled_config("fig6c").map_err(|e| e.to_string())?.model;
    let sudden = |p: &ModelParams, name| {
        run_params(name, ModelParams::sudden(p.t0, p.t_so, p.m_eff_initial().unwrap(), p.m_z, p.t_f), 121)
    };
    let sb = sudden(&mi_b, "sudden 6b")?;
    let sc = sudden(&mi_c, "sudden 6c")?;
    let pair = compare_processes(&sb.analysis.process, &sc.analysis.process);
    let shown = format!(
        "slow {} / {}; sudden {} rings / {} rings, {} / {}, ambiguous {}",
        slow_b.label,
        slow_c.label,
        sb.analysis.rings.len(),
        sc.analysis.rings.len(),
        pair.first,
        pair.second,
        pair.ambiguous
    );
    if sb.analysis.rings.len() == 1 && sc.analysis.rings.len() == 1 && pair.ambiguous {
        Ok(shown)
    } else {
        Err(shown)
    }
}

fn main() -> ExitCode {
    let t = Instant::now();
    let fig1 = run_config("fig1");
    let fig2 = run_config("fig2");
    let fig3b = run_config("fig3b");
    let fig3c = run_config("fig3c");
    let fig3d = run_config("fig3d");
    let fig8 = run_config("fig8");

    let verdicts: Vec<(u32, &str, Result<String, String>)> = vec![
        (1, "fig1 rings and runtime", c1(&fig1)),
        (2, "fig2 rings", c2(&fig2)),
        (3, "fig3b lone ISIS", c3(&fig3b)),
        (4, "fig3c topo to topo", c4(&fig3c)),
        (5, "fig3d mirror", c5(&fig3d)),
        (6, "sudden closed form", c6()),
        (7, "slow closed form", c7()),
        (8, "translation pair", c8()),
        (9, "critical ratio", c9()),
        (10, "g sweep", c10()),
        (11, "high Chern quench", c11(&fig8)),
        (12, "oracle cross-validation", c12(&[&fig1, &fig2, &fig3b, &fig3c, &fig3d, &fig8])),
        (13, "slow vs sudden distinguishability", c13()),
    ];
    let mut failed = 0;
    for (n, what, v) in &verdicts {
        match v {
            Ok(detail) => println!("criterion {n:2} PASS  {what}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {n:2} FAIL  {what}: {detail}");
            }
        }
    }
    println!(
        "acceptance: {} of {} passed in {:.0} s",
        verdicts.len() - failed,
        verdicts.len(),
        t.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
