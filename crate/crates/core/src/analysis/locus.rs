//! The sudden-quench spin-inversion locus and the critical spin-orbit strength.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::{Momentum, Variant};

/// Bisection tolerance on `t_so`.
pub const CRITICAL_TOL: f64 = 1e-6;

/// `h0_f h0_int + hx^2 + hy^2` at each sample; its zero set is the spin
/// inversion surface of the sudden quench.
pub fn sis_g0_locus(ks: &[Momentum], m_z_int: f64, m_z_f: f64, t0: f64, t_so: f64, variant: Variant) -> Vec<f64> {
    ks.iter()
        .map(|&k| {
            let band = t0 * (k.kx.cos() + k.ky.cos());
            let (hx, hy) = variant.spin_orbit(t_so, k);
            (m_z_f - band) * (m_z_int - band) + hx * hx + hy * hy
        })
        .collect()
}

/// Zeros of the locus on the diagonal `kx = ky`, as `k` values in `[-pi, pi)`.
///
/// Sign changes are bracketed on `samples` points and refined by bisection.
pub fn sis_g0_diagonal_zeros(
    m_z_int: f64,
    m_z_f: f64,
    t0: f64,
    t_so: f64,
    variant: Variant,
    samples: usize,
) -> Vec<f64> {
    let f = |k: f64| sis_g0_locus(&[Momentum { kx: k, ky: k }], m_z_int, m_z_f, t0, t_so, variant)[0];
    let h = 2.0 * PI / samples as f64;
    let mut out = Vec::new();
    for i in 0..samples {
        let (mut a, mut b) = (-PI + i as f64 * h, -PI + (i + 1) as f64 * h);
        let (mut fa, fb) = (f(a), f(b));
        if fa == 0.0 {
            out.push(a);
            continue;
        }
        if (fa > 0.0) == (fb > 0.0) || fb == 0.0 {
            continue;
        }
        for _ in 0..60 {
            let m = 0.5 * (a + b);
            let fm = f(m);
            if (fm > 0.0) == (fa > 0.0) {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        out.push(0.5 * (a + b));
    }
    out
}

/// The locus on the standard-model diagonal as a quadratic in `c = cos k`.
fn diagonal_quadratic(m_i: f64, m_f: f64, t0: f64, t: f64, c: f64) -> f64 {
    (4.0 * t0 * t0 - 2.0 * t * t) * c * c - 2.0 * t0 * (m_i + m_f) * c + m_i * m_f + 2.0 * t * t
}

fn diagonal_min(m_i: f64, m_f: f64, t0: f64, t: f64) -> f64 {
    let a = 4.0 * t0 * t0 - 2.0 * t * t;
    let mut best = diagonal_quadratic(m_i, m_f, t0, t, -1.0).min(diagonal_quadratic(m_i, m_f, t0, t, 1.0));
    if a > 0.0 {
        let c = (t0 * (m_i + m_f) / a).clamp(-1.0, 1.0);
        best = best.min(diagonal_quadratic(m_i, m_f, t0, t, c));
    }
    best
}

/// Largest `t_so` for which the sudden spin-inversion locus still crosses the
/// zone diagonal (standard model).
///
/// The locus grows monotonically with `t_so`, so the crossing set is an
/// interval `[0, t_c]`. `m_z_int = -m_z_f = m` gives `|m| / sqrt 2`.
pub fn critical_tso(m_z_int: f64, m_z_f: f64, t0: f64) -> Result<f64> {
    if !(t0 > 0.0) || !m_z_int.is_finite() || !m_z_f.is_finite() {
        return Err(Error::InvalidParams("critical_tso needs finite masses and t0 > 0".into()));
    }
    if m_z_int == -m_z_f && m_z_int.abs() <= 2.0 * t0 {
        if m_z_int == 0.0 {
            return Err(Error::NoCriticalSolution);
        }
        return Ok(m_z_int.abs() / 2f64.sqrt());
    }
    if diagonal_min(m_z_int, m_z_f, t0, 0.0) > 0.0 {
        return Err(Error::NoCriticalSolution);
    }
    // at c = +-1 the spin-orbit term drops out, so a root there persists for all t_so
    let edge = diagonal_quadratic(m_z_int, m_z_f, t0, 0.0, 1.0).min(diagonal_quadratic(m_z_int, m_z_f, t0, 0.0, -1.0));
    if edge < 0.0 {
        return Err(Error::UnboundedCritical);
    }
    let (mut lo, mut hi) = (0.0, t0);
    while diagonal_min(m_z_int, m_z_f, t0, hi) <= 0.0 {
        lo = hi;
        hi *= 2.0;
        if hi > 1e12 * t0 {
            return Err(Error::UnboundedCritical);
        }
    }
    while hi - lo > CRITICAL_TOL {
        let mid = 0.5 * (lo + hi);
        if diagonal_min(m_z_int, m_z_f, t0, mid) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
