//! Adaptive fourth-order Magnus propagator for `i d/dt psi = h(t) . sigma psi`.
//!
//! Each step exponentiates the two-point Gauss-Legendre Magnus generator exactly
//! (`exp(-i v . sigma) = cos|v| - i sin|v| v^ . sigma`), so the scheme is unitary
//! and exact for a frozen Hamiltonian. The local error is estimated by step
//! doubling.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::QuantumState;

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Error estimates below this are rounding noise in the step-doubling difference.
const ROUNDOFF_FLOOR: f64 = 4.0 * f64::EPSILON;

/// Knobs of the adaptive controller.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegratorOptions {
    /// Local error tolerance per unit time.
    pub tol_per_time: f64,
    /// Upper bound on `dt * |h(t)|` (precession phase per step). The error
    /// controller is what sets the step in the adiabatic tail; this cap only
    /// keeps it from stepping over whole precession cycles.
    pub phase_step: f64,
    /// Upper bound on `dt / t`, which resolves the `1/t` singularity.
    pub singular_step: f64,
    /// Steps below this abort the integration.
    pub min_step: f64,
    /// Norm drift (before renormalization) above which the step is rejected as a failure.
    pub norm_abort: f64,
}

impl Default for IntegratorOptions {
    fn default() -> Self {
        IntegratorOptions {
            tol_per_time: 1e-8,
            phase_step: 0.5,
            singular_step: 0.05,
            min_step: 1e-12,
            norm_abort: 1e-7,
        }
    }
}

/// `h(t) = (hx, hy, coupling / t + h0)`; `coupling = 0` gives a static field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuenchField {
    pub hx: f64,
    pub hy: f64,
    pub h0: f64,
    pub coupling: f64,
}

impl QuenchField {
    #[inline]
    pub fn at(&self, t: f64) -> [f64; 3] {
        let hz = if self.coupling == 0.0 { self.h0 } else { self.coupling / t + self.h0 };
        [self.hx, self.hy, hz]
    }

    #[inline]
    pub fn energy(&self, t: f64) -> f64 {
        let [x, y, z] = self.at(t);
        (x * x + y * y + z * z).sqrt()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct StepStats {
    pub accepted: usize,
    pub rejected: usize,
    /// Largest `|norm^2 - 1|` seen before renormalization.
    pub max_norm_drift: f64,
}

#[inline]
fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Applies `exp(-i v . sigma)`.
#[inline]
fn rotate(v: [f64; 3], psi: QuantumState) -> QuantumState {
    let a = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    if a == 0.0 {
        return psi;
    }
    let (s, c) = a.sin_cos();
    let f = s / a;
    let (x, y, z) = (v[0] * f, v[1] * f, v[2] * f);
    // (v^ . sigma) psi scaled by sin|v|
    let su = psi.a_up * z + psi.a_down * Complex64::new(x, -y);
    let sd = psi.a_up * Complex64::new(x, y) - psi.a_down * z;
    let mi = Complex64::new(0.0, -1.0);
    QuantumState { a_up: psi.a_up * c + mi * su, a_down: psi.a_down * c + mi * sd }
}

/// One fourth-order Magnus step from `t` to `t + dt`.
#[inline]
pub fn magnus_step(field: &QuenchField, psi: QuantumState, t: f64, dt: f64) -> QuantumState {
    let c1 = t + dt * (0.5 - SQRT3 / 6.0);
    let c2 = t + dt * (0.5 + SQRT3 / 6.0);
    let h1 = field.at(c1);
    let h2 = field.at(c2);
    let w = cross(h2, h1);
    let k = SQRT3 / 6.0 * dt * dt;
    let v = [
        0.5 * dt * (h1[0] + h2[0]) + k * w[0],
        0.5 * dt * (h1[1] + h2[1]) + k * w[1],
        0.5 * dt * (h1[2] + h2[2]) + k * w[2],
    ];
    rotate(v, psi)
}

/// Adaptive propagator that remembers its last step size between calls.
#[derive(Debug, Clone)]
pub struct Propagator {
    pub field: QuenchField,
    pub opts: IntegratorOptions,
    pub stats: StepStats,
    dt: Option<f64>,
}

impl Propagator {
    pub fn new(field: QuenchField, opts: IntegratorOptions) -> Self {
        Propagator { field, opts, stats: StepStats::default(), dt: None }
    }

    fn step_bound(&self, t: f64) -> f64 {
        let e = self.field.energy(t).max(1e-300);
        let mut b = self.opts.phase_step / e;
        if self.field.coupling != 0.0 {
            b = b.min(self.opts.singular_step * t);
        }
        b
    }

    /// Propagates `psi` from `t` to `t_end`.
    pub fn advance(&mut self, mut psi: QuantumState, mut t: f64, t_end: f64) -> Result<QuantumState> {
        let opts = self.opts;
        let mut dt = self.dt.unwrap_or_else(|| self.step_bound(t));
        while t < t_end {
            let bound = self.step_bound(t);
            dt = dt.min(bound);
            let last = t + dt >= t_end;
            let h = if last { t_end - t } else { dt };
            if h < opts.min_step && !last {
                return Err(Error::StepUnderflow { t, dt: h });
            }
            let full = magnus_step(&self.field, psi, t, h);
            let half = magnus_step(&self.field, psi, t, 0.5 * h);
            let two = magnus_step(&self.field, half, t + 0.5 * h, 0.5 * h);
            let err = ((two.a_up - full.a_up).norm().max((two.a_down - full.a_down).norm())) / 15.0;
            let allowed = (opts.tol_per_time * h).max(ROUNDOFF_FLOOR);
            if err <= allowed || h <= opts.min_step {
                let drift = (two.norm_sqr() - 1.0).abs();
                self.stats.max_norm_drift = self.stats.max_norm_drift.max(drift);
                if drift > opts.norm_abort {
                    return Err(Error::NormDrift { t: t + h, drift });
                }
                psi = two.normalized();
                t = if last { t_end } else { t + h };
                self.stats.accepted += 1;
                let grow = if err == 0.0 { 4.0 } else { (0.9 * (allowed / err).powf(0.25)).clamp(0.2, 4.0) };
                if !last || grow < 1.0 {
                    dt = h * grow;
                }
            } else {
                self.stats.rejected += 1;
                dt = h * (0.9 * (allowed / err).powf(0.25)).clamp(0.1, 0.9);
                if dt < opts.min_step {
                    return Err(Error::StepUnderflow { t, dt });
                }
            }
        }
        self.dt = Some(dt);
        Ok(psi)
    }
}
