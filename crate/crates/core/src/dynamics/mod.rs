//! Time evolution through the quench and the time-averaged spin polarization.
//!
//! A slow quench is integrated up to `t_switch`, where the residual coupling
//! `g/t` has dropped to `switch_factor * eps_f`; beyond that point the
//! evolution is adiabatic and only accrues a relative phase, so the state is
//! projected onto the instantaneous eigenbasis there.

mod closed_form;
mod grid;
mod integrator;

pub use closed_form::{slow_exact_polarization, tasp_slow_exact, tasp_sudden_closed_form};
pub use grid::{tasp_grid, tasp_grid_with, tasp_points, TaspGrid};
pub use integrator::{magnus_step, IntegratorOptions, Propagator, QuenchField, StepStats};

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{field_at, sudden_initial_field, FieldVector, ModelParams, Momentum, StartTime};
use crate::state::{eigenstates, ground_state, QuantumState};

/// Numerical controls for one evolution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EvolveOptions {
    pub integrator: IntegratorOptions,
    /// Projection happens once `g/t` falls to this fraction of `eps_f`.
    pub switch_factor: f64,
    /// For `t_int = 0+` the integration starts at `start_factor * g`.
    pub start_factor: f64,
    /// Integrate all the way to `t_f` instead of projecting at `t_switch`.
    pub full_integration: bool,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        EvolveOptions {
            integrator: IntegratorOptions::default(),
            switch_factor: 1e-3,
            start_factor: 1e-6,
            full_integration: false,
        }
    }
}

/// Occupations of the final eigenstates `|+>` (excited) and `|->` (ground).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvolutionResult {
    pub p_up: f64,
    pub p_down: f64,
    /// State at the projection time.
    pub final_state: QuantumState,
    /// `arg(c_+ conj(c_-))`; zero when either amplitude vanishes.
    pub phase: f64,
    /// Time at which the state was projected.
    pub t_projection: f64,
}

impl EvolutionResult {
    /// `P_u - P_d`.
    pub fn polarization(&self) -> f64 {
        self.p_up - self.p_down
    }
}

/// Time-averaged `(<sigma_x>, <sigma_y>, <sigma_z>)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct TaspVector {
    pub sx: f64,
    pub sy: f64,
    pub sz: f64,
}

impl TaspVector {
    pub fn new(sx: f64, sy: f64, sz: f64) -> Self {
        TaspVector { sx, sy, sz }
    }

    pub fn norm(&self) -> f64 {
        (self.sx * self.sx + self.sy * self.sy + self.sz * self.sz).sqrt()
    }

    pub fn inplane(&self) -> f64 {
        self.sx.hypot(self.sy)
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.sx, self.sy, self.sz]
    }

    pub fn max_abs_diff(&self, other: &TaspVector) -> f64 {
        (self.sx - other.sx).abs().max((self.sy - other.sy).abs()).max((self.sz - other.sz).abs())
    }
}

/// Field of the quench at `k` in the form consumed by the integrator.
pub fn quench_field(params: &ModelParams, k: Momentum) -> QuenchField {
    let (hx, hy) = params.variant.spin_orbit(params.t_so, k);
    QuenchField { hx, hy, h0: params.h0_static(k), coupling: params.protocol_sign.value() * params.g }
}

/// Field the TASP is measured against: `h(k, t_f)`, or `h_f` for a sudden quench.
pub fn final_field(params: &ModelParams, k: Momentum) -> Result<FieldVector> {
    field_at(params, k, params.t_f)
}

/// Projection time for a slow quench, clamped into `[t_int, t_f]`.
pub fn switch_time(params: &ModelParams, eps_f: f64, opts: &EvolveOptions) -> f64 {
    let t_int = params.t_int.value();
    if params.is_sudden() {
        return t_int;
    }
    let t = params.g / (opts.switch_factor * eps_f);
    t.max(t_int).min(params.t_f)
}

/// Whether the coupling at `t_f` is small enough for the final field to be static
/// (`g/t_f < 0.01 eps_f`).
pub fn ends_adiabatic(params: &ModelParams, k: Momentum) -> bool {
    match final_field(params, k) {
        Ok(f) => params.g / params.t_f < 0.01 * f.energy(),
        Err(_) => false,
    }
}

fn initial_state(params: &ModelParams, k: Momentum, opts: &EvolveOptions) -> Result<(QuantumState, f64)> {
    match params.t_int {
        StartTime::ZeroPlus => {
            // the divergent s g / t sigma_z term selects a sigma_z eigenstate
            let psi = if params.protocol_sign.value() * params.g > 0.0 {
                QuantumState::SPIN_DOWN
            } else {
                QuantumState::SPIN_UP
            };
            Ok((psi, opts.start_factor * params.g))
        }
        StartTime::At(t) => Ok((ground_state(&field_at(params, k, t)?)?, t)),
    }
}

fn project(psi: QuantumState, basis: &FieldVector, t: f64) -> Result<EvolutionResult> {
    let (plus, minus) = eigenstates(basis)?;
    let cp = plus.inner(&psi);
    let cm = minus.inner(&psi);
    let (a, b) = (cp.norm_sqr(), cm.norm_sqr());
    let s = a + b;
    let phase = if a > 0.0 && b > 0.0 { (cp * cm.conj()).arg() } else { 0.0 };
    Ok(EvolutionResult { p_up: a / s, p_down: b / s, final_state: psi, phase, t_projection: t })
}

/// Evolves the state at `k` through the quench with default options.
pub fn evolve(params: &ModelParams, k: Momentum) -> Result<EvolutionResult> {
    evolve_with(params, k, &EvolveOptions::default())
}

pub fn evolve_with(params: &ModelParams, k: Momentum, opts: &EvolveOptions) -> Result<EvolutionResult> {
    params.validate()?;
    evolve_unchecked(params, k, opts).map_err(|e| e.at(k))
}

pub(crate) fn evolve_unchecked(params: &ModelParams, k: Momentum, opts: &EvolveOptions) -> Result<EvolutionResult> {
    if params.is_sudden() {
        let psi0 = ground_state(&sudden_initial_field(params, k)?)?;
        return project(psi0, &final_field(params, k)?, params.t_int.value());
    }
    let eps_f = final_field(params, k)?.energy();
    if !(eps_f > 0.0) {
        return Err(Error::Gapless);
    }
    let (psi0, t_start) = initial_state(params, k, opts)?;
    let t_end = if opts.full_integration { params.t_f } else { switch_time(params, eps_f, opts) };
    let mut prop = Propagator::new(quench_field(params, k), opts.integrator);
    let psi = if t_end > t_start { prop.advance(psi0, t_start, t_end)? } else { psi0 };
    // populations are adiabatic invariants past t_switch, so the
    // instantaneous basis at t_end is the right one to read them in
    project(psi, &field_at(params, k, t_end)?, t_end)
}

/// `(P_u - P_d) h_f / eps_f`.
pub fn tasp_from_result(result: &EvolutionResult, final_field: &FieldVector) -> Result<TaspVector> {
    let e = final_field.energy();
    if !(e > 0.0) {
        return Err(Error::Gapless);
    }
    let p = result.polarization();
    Ok(TaspVector::new(p * final_field.hx / e, p * final_field.hy / e, p * final_field.hz / e))
}

/// TASP at one momentum via projection.
pub fn tasp_at(params: &ModelParams, k: Momentum, opts: &EvolveOptions) -> Result<TaspVector> {
    let r = evolve_unchecked(params, k, opts)?;
    tasp_from_result(&r, &final_field(params, k)?)
}

/// Samples per precession period in [`tasp_time_average`].
const SAMPLES_PER_PERIOD: usize = 64;

/// Direct time average of `<psi|sigma|psi>` over `window_periods` precession
/// periods `pi / eps_f` ending at `t_f`.
pub fn tasp_time_average(params: &ModelParams, k: Momentum, window_periods: usize) -> Result<TaspVector> {
    tasp_time_average_with(params, k, window_periods, &EvolveOptions::default())
}

pub fn tasp_time_average_with(
    params: &ModelParams,
    k: Momentum,
    window_periods: usize,
    opts: &EvolveOptions,
) -> Result<TaspVector> {
    params.validate()?;
    if window_periods < 5 {
        return Err(Error::InvalidParams(format!("window_periods must be >= 5, got {window_periods}")));
    }
    time_average(params, k, window_periods, opts).map_err(|e| e.at(k))
}

fn time_average(params: &ModelParams, k: Momentum, periods: usize, opts: &EvolveOptions) -> Result<TaspVector> {
    let hf = final_field(params, k)?;
    let eps_f = hf.energy();
    if !(eps_f > 0.0) {
        return Err(Error::Gapless);
    }
    let period = PI / eps_f;
    let start = params.t_f - periods as f64 * period;
    let field = quench_field(params, k);

    let psi = if params.is_sudden() {
        if start < params.t_int.value() {
            return Err(Error::Window { start, end: params.t_f, t_switch: params.t_int.value() });
        }
        // static H_f from the quench instant: one exact rotation to the window start
        let psi0 = ground_state(&sudden_initial_field(params, k)?)?;
        let mut p = Propagator::new(field, opts.integrator);
        p.advance(psi0, 0.0, start)?
    } else {
        let t_switch = switch_time(params, eps_f, opts);
        if start < t_switch {
            return Err(Error::Window { start, end: params.t_f, t_switch });
        }
        let r = evolve_unchecked(params, k, opts)?;
        // carry the projected amplitudes adiabatically to the window start
        let (plus, minus) = eigenstates(&field_at(params, k, start)?)?;
        let cp = Complex64::from_polar(r.p_up.sqrt(), r.phase);
        let cm = Complex64::new(r.p_down.sqrt(), 0.0);
        QuantumState::new(cp * plus.a_up + cm * minus.a_up, cp * plus.a_down + cm * minus.a_down)
    };

    let m = periods * SAMPLES_PER_PERIOD;
    let dt = (params.t_f - start) / m as f64;
    let mut acc = [0.0; 3];
    let mut cur = psi;
    // uniform samples over whole periods: the periodic trapezoid rule
    for j in 0..m {
        let s = cur.spin();
        for c in 0..3 {
            acc[c] += s[c];
        }
        cur = magnus_step(&field, cur, start + j as f64 * dt, dt);
    }
    let inv = 1.0 / m as f64;
    Ok(TaspVector::new(acc[0] * inv, acc[1] * inv, acc[2] * inv))
}
