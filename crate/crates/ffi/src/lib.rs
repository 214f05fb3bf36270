//! C ABI over the `tasp` crate.
//!
//! Every entry point returns a [`TaspStatus`]; on failure the message is kept
//! in a thread-local buffer readable through [`tasp_last_error_message`].
//! Grids and analyses are opaque handles released with their `_free`
//! functions. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use tasp::analysis::{analyze, critical_tso, Analysis, ProcessLabel, RingKind};
use tasp::dynamics::{tasp_at, tasp_grid_with, EvolveOptions, TaspGrid as CoreGrid};
use tasp::model::chern_fukui;
use tasp::{Error, ModelParams, Momentum, ProtocolSign, StartTime, Variant};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TaspStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidParams = 2,
    Numerical = 3,
    Analysis = 4,
    OutOfRange = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TaspVariant {
    Standard = 0,
    HighChern = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TaspRingKind {
    Bis = 0,
    Fsis = 1,
    Isis = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TaspProcessLabel {
    TrivialToTopo = 0,
    TopoToTrivial = 1,
    TopoToTopo = 2,
    TrivialToTrivial = 3,
    Unclassifiable = 4,
}

impl From<ProcessLabel> for TaspProcessLabel {
    fn from(l: ProcessLabel) -> Self {
        match l {
            ProcessLabel::TrivialToTopo => TaspProcessLabel::TrivialToTopo,
            ProcessLabel::TopoToTrivial => TaspProcessLabel::TopoToTrivial,
            ProcessLabel::TopoToTopo => TaspProcessLabel::TopoToTopo,
            ProcessLabel::TrivialToTrivial => TaspProcessLabel::TrivialToTrivial,
            ProcessLabel::Unclassifiable => TaspProcessLabel::Unclassifiable,
        }
    }
}

/// Quench parameters. `t_int_zero_plus != 0` starts at `t = 0+` and ignores
/// `t_int`; `g = 0` is a sudden quench from `m_z_int` (needs `has_m_z_int`).
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct TaspParams {
    pub t0: f64,
    pub t_so: f64,
    pub m_z: f64,
    pub g: f64,
    /// +1 for `g/t`, -1 for `-g/t`.
    pub protocol_sign: i32,
    pub variant: TaspVariant,
    pub t_int_zero_plus: i32,
    pub t_int: f64,
    pub t_f: f64,
    pub has_m_z_int: i32,
    pub m_z_int: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct TaspRingInfo {
    pub kind: TaspRingKind,
    pub has_winding: i32,
    pub winding: i32,
    pub has_enclosed_charge: i32,
    pub enclosed_charge: i32,
    pub contractible: i32,
    pub point_count: usize,
    pub mean_inplane: f64,
    pub centroid_kx: f64,
    pub centroid_ky: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct TaspProcessInfo {
    pub label: TaspProcessLabel,
    pub has_initial: i32,
    pub initial_invariant: i32,
    pub has_final: i32,
    pub final_invariant: i32,
    pub ambiguous: i32,
}

/// Opaque TASP grid.
pub struct TaspGrid(CoreGrid);

/// Opaque ring analysis of one grid.
pub struct TaspAnalysis(Analysis);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> TaspStatus {
    match e {
        Error::InvalidParams(_)
        | Error::SingularTime { .. }
        | Error::PhaseBoundary { .. }
        | Error::Config(_)
        | Error::Window { .. } => TaspStatus::InvalidParams,
        Error::AtMomentum { source, .. } => status_of(source),
        Error::GridTooSmall(_)
        | Error::DegenerateField { .. }
        | Error::Quantization { .. }
        | Error::OpenRing
        | Error::RingKind(_)
        | Error::NormalEstimation { .. }
        | Error::ChargeOnRing { .. }
        | Error::NoCriticalSolution
        | Error::UnboundedCritical => TaspStatus::Analysis,
        _ => TaspStatus::Numerical,
    }
}

/// Runs `f`, recording any error or panic.
fn guard(f: impl FnOnce() -> Result<(), (TaspStatus, String)>) -> TaspStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            TaspStatus::Ok
        }
        Ok(Err((s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("panic inside tasp");
            TaspStatus::Panic
        }
    }
}

fn core(e: Error) -> (TaspStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(name: &str) -> (TaspStatus, String) {
    (TaspStatus::NullArgument, format!("{name} is null"))
}

fn to_params(p: &TaspParams) -> Result<ModelParams, (TaspStatus, String)> {
    let sign = match p.protocol_sign {
        1 => ProtocolSign::Plus,
        -1 => ProtocolSign::Minus,
        s => return Err((TaspStatus::InvalidParams, format!("protocol_sign must be +1 or -1, got {s}"))),
    };
    let variant = match p.variant {
        TaspVariant::Standard => Variant::Standard,
        TaspVariant::HighChern => Variant::HighChern,
    };
    let t_int = if p.t_int_zero_plus != 0 { StartTime::ZeroPlus } else { StartTime::At(p.t_int) };
    let m = ModelParams {
        t0: p.t0,
        t_so: p.t_so,
        m_z: p.m_z,
        g: p.g,
        protocol_sign: sign,
        variant,
        t_int,
        t_f: p.t_f,
        m_z_int: (p.has_m_z_int != 0).then_some(p.m_z_int),
    };
    m.validate().map_err(core)?;
    Ok(m)
}

/// Message of the last failed call on this thread; empty after a success.
/// Valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn tasp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn tasp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Checks a parameter set.
///
/// # Safety
/// `params` must be null or point to a valid `TaspParams`.
#[no_mangle]
pub unsafe extern "C" fn tasp_params_validate(params: *const TaspParams) -> TaspStatus {
    guard(|| {
        let p = params.as_ref().ok_or_else(|| null("params"))?;
        to_params(p).map(|_| ())
    })
}

/// TASP `(sx, sy, sz)` at one momentum.
///
/// # Safety
/// `params` must point to a valid `TaspParams`; `out` to three writable doubles.
#[no_mangle]
pub unsafe extern "C" fn tasp_point(params: *const TaspParams, kx: f64, ky: f64, out: *mut f64) -> TaspStatus {
    guard(|| {
        let p = to_params(params.as_ref().ok_or_else(|| null("params"))?)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let s = tasp_at(&p, Momentum::new(kx, ky), &EvolveOptions::default()).map_err(core)?;
        std::slice::from_raw_parts_mut(out, 3).copy_from_slice(&s.as_array());
        Ok(())
    })
}

/// Computes the TASP on a `grid_n x grid_n` zone grid.
///
/// # Safety
/// `params` must point to a valid `TaspParams`; `out` to writable storage for
/// a handle, which is set only on success.
#[no_mangle]
pub unsafe extern "C" fn tasp_grid_new(
    params: *const TaspParams,
    grid_n: usize,
    out: *mut *mut TaspGrid,
) -> TaspStatus {
    guard(|| {
        let p = to_params(params.as_ref().ok_or_else(|| null("params"))?)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let g = tasp_grid_with(&p, grid_n, &EvolveOptions::default()).map_err(core)?;
        *out = Box::into_raw(Box::new(TaspGrid(g)));
        Ok(())
    })
}

/// # Safety
/// `grid` must be null or a handle from `tasp_grid_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tasp_grid_free(grid: *mut TaspGrid) {
    if !grid.is_null() {
        drop(Box::from_raw(grid));
    }
}

/// Points per axis, or 0 for a null handle.
///
/// # Safety
/// `grid` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tasp_grid_size(grid: *const TaspGrid) -> usize {
    grid.as_ref().map_or(0, |g| g.0.grid_n)
}

/// TASP at node `(ix, iy)`, i.e. `k = (-pi + ix h, -pi + iy h)` with `h = 2 pi / n`.
///
/// # Safety
/// `grid` must be a live handle; `out` must point to three writable doubles.
#[no_mangle]
pub unsafe extern "C" fn tasp_grid_get(grid: *const TaspGrid, ix: usize, iy: usize, out: *mut f64) -> TaspStatus {
    guard(|| {
        let g = &grid.as_ref().ok_or_else(|| null("grid"))?.0;
        if out.is_null() {
            return Err(null("out"));
        }
        if ix >= g.grid_n || iy >= g.grid_n {
            return Err((TaspStatus::OutOfRange, format!("node ({ix}, {iy}) outside a {} grid", g.grid_n)));
        }
        std::slice::from_raw_parts_mut(out, 3).copy_from_slice(&g.get(ix, iy).as_array());
        Ok(())
    })
}

/// Extracts and classifies the rings of a grid.
///
/// # Safety
/// `grid` must be a live handle; `out` writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn tasp_analysis_new(grid: *const TaspGrid, out: *mut *mut TaspAnalysis) -> TaspStatus {
    guard(|| {
        let g = &grid.as_ref().ok_or_else(|| null("grid"))?.0;
        if out.is_null() {
            return Err(null("out"));
        }
        let a = analyze(g).map_err(core)?;
        *out = Box::into_raw(Box::new(TaspAnalysis(a)));
        Ok(())
    })
}

/// # Safety
/// `analysis` must be null or a handle from `tasp_analysis_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tasp_analysis_free(analysis: *mut TaspAnalysis) {
    if !analysis.is_null() {
        drop(Box::from_raw(analysis));
    }
}

/// Number of rings, or 0 for a null handle.
///
/// # Safety
/// `analysis` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tasp_analysis_ring_count(analysis: *const TaspAnalysis) -> usize {
    analysis.as_ref().map_or(0, |a| a.0.rings.len())
}

/// Summary of ring `index`.
///
/// # Safety
/// `analysis` must be a live handle; `out` must point to a writable `TaspRingInfo`.
#[no_mangle]
pub unsafe extern "C" fn tasp_analysis_ring(
    analysis: *const TaspAnalysis,
    index: usize,
    out: *mut TaspRingInfo,
) -> TaspStatus {
    guard(|| {
        let a = &analysis.as_ref().ok_or_else(|| null("analysis"))?.0;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let r =
            a.rings.get(index).ok_or_else(|| (TaspStatus::OutOfRange, format!("ring {index} of {}", a.rings.len())))?;
        *out = TaspRingInfo {
            kind: match r.kind {
                RingKind::Bis => TaspRingKind::Bis,
                RingKind::Fsis => TaspRingKind::Fsis,
                RingKind::Isis => TaspRingKind::Isis,
            },
            has_winding: r.winding.is_some() as i32,
            winding: r.winding.unwrap_or(0),
            has_enclosed_charge: r.enclosed_charge.is_some() as i32,
            enclosed_charge: r.enclosed_charge.unwrap_or(0),
            contractible: r.contractible as i32,
            point_count: r.points.len(),
            mean_inplane: r.mean_inplane,
            centroid_kx: r.centroid.kx,
            centroid_ky: r.centroid.ky,
        };
        Ok(())
    })
}

/// Copies up to `capacity` points of ring `index` as `(kx, ky)` pairs into
/// `xy` (length `2 * capacity`) and stores the number copied in `written`.
///
/// # Safety
/// `analysis` must be a live handle; `xy` must hold `2 * capacity` doubles;
/// `written` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tasp_analysis_ring_points(
    analysis: *const TaspAnalysis,
    index: usize,
    xy: *mut f64,
    capacity: usize,
    written: *mut usize,
) -> TaspStatus {
    guard(|| {
        let a = &analysis.as_ref().ok_or_else(|| null("analysis"))?.0;
        let written = written.as_mut().ok_or_else(|| null("written"))?;
        if xy.is_null() && capacity > 0 {
            return Err(null("xy"));
        }
        let r =
            a.rings.get(index).ok_or_else(|| (TaspStatus::OutOfRange, format!("ring {index} of {}", a.rings.len())))?;
        let n = r.points.len().min(capacity);
        if n > 0 {
            let dst = std::slice::from_raw_parts_mut(xy, 2 * n);
            for (i, p) in r.points[..n].iter().enumerate() {
                dst[2 * i] = p.kx;
                dst[2 * i + 1] = p.ky;
            }
        }
        *written = n;
        Ok(())
    })
}

/// Process type read from the rings.
///
/// # Safety
/// `analysis` must be a live handle; `out` must point to a writable `TaspProcessInfo`.
#[no_mangle]
pub unsafe extern "C" fn tasp_analysis_process(analysis: *const TaspAnalysis, out: *mut TaspProcessInfo) -> TaspStatus {
    guard(|| {
        let p = &analysis.as_ref().ok_or_else(|| null("analysis"))?.0.process;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = TaspProcessInfo {
            label: p.label.into(),
            has_initial: p.initial_invariant.is_some() as i32,
            initial_invariant: p.initial_invariant.unwrap_or(0),
            has_final: p.final_invariant.is_some() as i32,
            final_invariant: p.final_invariant.unwrap_or(0),
            ambiguous: p.ambiguous as i32,
        };
        Ok(())
    })
}

/// Critical spin-orbit strength of the sudden spin-inversion locus.
///
/// # Safety
/// `out` must point to a writable double.
#[no_mangle]
pub unsafe extern "C" fn tasp_critical_tso(m_z_int: f64, m_z_f: f64, t0: f64, out: *mut f64) -> TaspStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = critical_tso(m_z_int, m_z_f, t0).map_err(core)?;
        Ok(())
    })
}

/// Lattice Chern number of the lower band of the static model at `m_eff`.
/// Only `t0`, `t_so` and `variant` of `params` are used.
///
/// # Safety
/// `params` must point to a valid `TaspParams`; `out` to a writable int.
#[no_mangle]
pub unsafe extern "C" fn tasp_chern_number(
    params: *const TaspParams,
    m_eff: f64,
    grid_n: usize,
    out: *mut i32,
) -> TaspStatus {
    guard(|| {
        let p = params.as_ref().ok_or_else(|| null("params"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let variant = match p.variant {
            TaspVariant::Standard => Variant::Standard,
            TaspVariant::HighChern => Variant::HighChern,
        };
        let m = ModelParams::slow(p.t0, p.t_so, m_eff, 1.0, ProtocolSign::Plus, StartTime::ZeroPlus, 1.0)
            .with_variant(variant);
        *out = chern_fukui(m_eff, &m, grid_n).map_err(core)?;
        Ok(())
    })
}
