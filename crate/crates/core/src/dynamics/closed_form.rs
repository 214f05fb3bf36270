//! Closed-form TASP for the sudden quench and for the `g/t` ramp started at `t = 0+`.

use std::f64::consts::PI;

use super::TaspVector;
use crate::error::{Error, Result};
use crate::model::{static_field, ModelParams, Momentum, ProtocolSign, Variant};

/// Sudden quench `m_z_int -> m_z_f`:
/// `-(h0_f h0_int + hx^2 + hy^2) h_f / (eps_int eps_f^2)`.
pub fn tasp_sudden_closed_form(
    k: Momentum,
    m_z_int: f64,
    m_z_f: f64,
    t0: f64,
    t_so: f64,
    variant: Variant,
) -> Result<TaspVector> {
    let fi = static_field(variant, t0, t_so, m_z_int, k);
    let ff = static_field(variant, t0, t_so, m_z_f, k);
    let (ei, ef) = (fi.energy(), ff.energy());
    if !(ei > 0.0 && ef > 0.0) {
        return Err(Error::Gapless);
    }
    let num = ff.hz * fi.hz + ff.hx * ff.hx + ff.hy * ff.hy;
    let s = -num / (ei * ef * ef);
    Ok(TaspVector::new(s * ff.hx, s * ff.hy, s * ff.hz))
}

/// `P_u - P_d = (exp(-2 pi g h0/eps_f) - cosh 2 pi g) / sinh 2 pi g`.
///
/// Evaluated after dividing through by `exp(2 pi g)`, which keeps every
/// exponent nonpositive since `h0/eps_f >= -1`.
pub fn slow_exact_polarization(h0: f64, eps_f: f64, g: f64) -> f64 {
    let a = 2.0 * PI * g;
    let r = (h0 / eps_f).clamp(-1.0, 1.0);
    let e2 = (-2.0 * a).exp();
    let num = (-a * (r + 1.0)).exp() - 0.5 * (1.0 + e2);
    let den = 0.5 * (1.0 - e2);
    num / den
}

/// TASP of the ramp `g/t + m_z` from `t_int = 0+` to `t_f -> infinity`.
pub fn tasp_slow_exact(k: Momentum, params: &ModelParams) -> Result<TaspVector> {
    if !(params.g > 0.0) {
        return Err(Error::NotApplicable("needs g > 0".into()));
    }
    if !params.t_int.is_zero_plus() {
        return Err(Error::NotApplicable("needs t_int = 0+".into()));
    }
    if params.protocol_sign == ProtocolSign::Minus {
        return Err(Error::NotApplicable("needs the +g/t protocol".into()));
    }
    let f = static_field(params.variant, params.t0, params.t_so, params.m_z, k);
    let e = f.energy();
    if !(e > 0.0) {
        return Err(Error::Gapless);
    }
    let p = slow_exact_polarization(f.hz, e, params.g);
    Ok(TaspVector::new(p * f.hx / e, p * f.hy / e, p * f.hz / e))
}
