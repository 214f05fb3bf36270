//! Two-band Chern-insulator Hamiltonians `h(k, t) . sigma` and their static phase diagram.
//!
//! The quench axis is `h_z`: `h_z(k, t) = s g / t + m_z - t0 cos kx - t0 cos ky` with the
//! protocol sign `s = +1` (`g/t`) or `s = -1` (`-g/t`). The spin-orbit pair is
//! `(t_so sin kx, t_so sin ky)` for the standard model and
//! `(t_so sin 2kx, t_so sin 2ky)` for the high-Chern variant.

mod chern;

pub use chern::{chern_fukui, CHERN_SIGN};

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Tolerance used to reject `m_eff` values that sit on a phase boundary.
pub const BOUNDARY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    #[default]
    Standard,
    HighChern,
}

impl Variant {
    /// Spin-orbit pair `(h_x, h_y)` at `k`.
    #[inline]
    pub fn spin_orbit(self, t_so: f64, k: Momentum) -> (f64, f64) {
        match self {
            Variant::Standard => (t_so * k.kx.sin(), t_so * k.ky.sin()),
            Variant::HighChern => (t_so * (2.0 * k.kx).sin(), t_so * (2.0 * k.ky).sin()),
        }
    }

    /// Zeros of the spin-orbit pair inside `[-pi, pi)^2`, ordered by `(kx, ky)`.
    pub fn spin_orbit_zeros(self) -> Vec<Momentum> {
        let axis: &[f64] = match self {
            Variant::Standard => &[-PI, 0.0],
            Variant::HighChern => &[-PI, -PI / 2.0, 0.0, PI / 2.0],
        };
        let mut out = Vec::with_capacity(axis.len() * axis.len());
        for &kx in axis {
            for &ky in axis {
                out.push(Momentum { kx, ky });
            }
        }
        out
    }

    /// Phase-boundary values of `m_eff` in units of `t0`.
    fn boundaries(self) -> &'static [f64] {
        match self {
            Variant::Standard => &[-2.0, 0.0, 2.0],
            Variant::HighChern => &[-2.0, -1.0, 0.0, 1.0, 2.0],
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Standard => f.write_str("standard"),
            Variant::HighChern => f.write_str("high_chern"),
        }
    }
}

/// Sign of the `g/t` protocol term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ProtocolSign {
    #[default]
    Plus,
    Minus,
}

impl ProtocolSign {
    #[inline]
    pub fn value(self) -> f64 {
        match self {
            ProtocolSign::Plus => 1.0,
            ProtocolSign::Minus => -1.0,
        }
    }
}

impl Serialize for ProtocolSign {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i8(self.value() as i8)
    }
}

impl<'de> Deserialize<'de> for ProtocolSign {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Int(1) => Ok(ProtocolSign::Plus),
            Repr::Int(-1) => Ok(ProtocolSign::Minus),
            Repr::Text(s) if s == "+" || s == "plus" => Ok(ProtocolSign::Plus),
            Repr::Text(s) if s == "-" || s == "minus" => Ok(ProtocolSign::Minus),
            _ => Err(serde::de::Error::custom("protocol_sign must be +1 or -1")),
        }
    }
}

/// Start of the quench: a finite time, or the limit `t -> 0+` where `g/t` diverges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StartTime {
    ZeroPlus,
    At(f64),
}

impl StartTime {
    pub fn is_zero_plus(self) -> bool {
        matches!(self, StartTime::ZeroPlus)
    }

    /// Numeric value, with `0+` mapped to `0.0`.
    pub fn value(self) -> f64 {
        match self {
            StartTime::ZeroPlus => 0.0,
            StartTime::At(t) => t,
        }
    }
}

impl Serialize for StartTime {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            StartTime::ZeroPlus => s.serialize_str("0+"),
            StartTime::At(t) => s.serialize_f64(*t),
        }
    }
}

impl<'de> Deserialize<'de> for StartTime {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(f64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(t) => Ok(StartTime::At(t)),
            Repr::Text(s) if s.trim() == "0+" => Ok(StartTime::ZeroPlus),
            Repr::Text(s) => s
                .trim()
                .parse::<f64>()
                .map(StartTime::At)
                .map_err(|_| serde::de::Error::custom(format!("bad t_int {s:?}; use a number or \"0+\""))),
        }
    }
}

/// Physical and protocol parameters of one quench.
///
/// `g = 0` selects the sudden quench, which additionally needs `m_z_int`; the
/// post-quench mass is always `m_z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub t0: f64,
    pub t_so: f64,
    pub m_z: f64,
    pub g: f64,
    #[serde(default)]
    pub protocol_sign: ProtocolSign,
    #[serde(default)]
    pub variant: Variant,
    pub t_int: StartTime,
    pub t_f: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_z_int: Option<f64>,
}

impl ModelParams {
    /// Slow quench with protocol `sign * g / t`.
    pub fn slow(t0: f64, t_so: f64, m_z: f64, g: f64, sign: ProtocolSign, t_int: StartTime, t_f: f64) -> Self {
        ModelParams { t0, t_so, m_z, g, protocol_sign: sign, variant: Variant::Standard, t_int, t_f, m_z_int: None }
    }

    /// Sudden quench `m_z_int -> m_z_f`, observed up to `t_f`.
    pub fn sudden(t0: f64, t_so: f64, m_z_int: f64, m_z_f: f64, t_f: f64) -> Self {
        ModelParams {
            t0,
            t_so,
            m_z: m_z_f,
            g: 0.0,
            protocol_sign: ProtocolSign::Plus,
            variant: Variant::Standard,
            t_int: StartTime::At(0.0),
            t_f,
            m_z_int: Some(m_z_int),
        }
    }

    pub fn with_variant(mut self, variant: Variant) -> Self {
        self.variant = variant;
        self
    }

    pub fn is_sudden(&self) -> bool {
        self.g == 0.0
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        for (name, v) in [("t0", self.t0), ("t_so", self.t_so), ("m_z", self.m_z), ("g", self.g), ("t_f", self.t_f)] {
            if !v.is_finite() {
                return bad(format!("{name} must be finite"));
            }
        }
        if self.t0 <= 0.0 {
            return bad(format!("t0 must be positive, got {}", self.t0));
        }
        if self.t_so < 0.0 {
            return bad(format!("t_so must be nonnegative, got {}", self.t_so));
        }
        if self.g < 0.0 {
            return bad(format!("g must be nonnegative, got {}", self.g));
        }
        if let StartTime::At(t) = self.t_int {
            if !t.is_finite() || t < 0.0 {
                return bad(format!("t_int must be a nonnegative number, got {t}"));
            }
        }
        if self.t_f <= self.t_int.value() {
            return bad(format!("t_f ({}) must exceed t_int ({})", self.t_f, self.t_int.value()));
        }
        if self.is_sudden() {
            match self.m_z_int {
                Some(m) if m.is_finite() => {}
                _ => return bad("sudden quench (g = 0) needs a finite m_z_int".into()),
            }
        } else if let StartTime::At(t) = self.t_int {
            if t == 0.0 {
                return bad("t_int = 0 with g > 0 is singular; use \"0+\"".into());
            }
        }
        if self.t_int.is_zero_plus() && self.g <= 0.0 {
            return bad("t_int = 0+ requires g > 0".into());
        }
        Ok(())
    }

    /// Effective mass `s g / t + m_z` at time `t` (the final mass for a sudden quench).
    pub fn m_eff(&self, t: f64) -> f64 {
        if self.is_sudden() {
            self.m_z
        } else {
            self.protocol_sign.value() * self.g / t + self.m_z
        }
    }

    /// Effective mass of the initial Hamiltonian; `None` when it diverges (`t_int = 0+`).
    pub fn m_eff_initial(&self) -> Option<f64> {
        if self.is_sudden() {
            return self.m_z_int;
        }
        match self.t_int {
            StartTime::ZeroPlus => None,
            StartTime::At(t) => Some(self.m_eff(t)),
        }
    }

    pub fn m_eff_final(&self) -> f64 {
        self.m_eff(self.t_f)
    }

    /// Static part of the quench-axis field, `m_z - t0 (cos kx + cos ky)`.
    #[inline]
    pub fn h0_static(&self, k: Momentum) -> f64 {
        self.m_z - self.t0 * (k.kx.cos() + k.ky.cos())
    }
}

/// A point in the first Brillouin zone, `kx, ky` in `[-pi, pi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Momentum {
    pub kx: f64,
    pub ky: f64,
}

impl Momentum {
    /// Builds a momentum with both components wrapped into `[-pi, pi)`.
    pub fn new(kx: f64, ky: f64) -> Self {
        Momentum { kx: wrap_k(kx), ky: wrap_k(ky) }
    }

    /// `k + (pi, pi)`, wrapped.
    pub fn shifted_by_pi(self) -> Self {
        Momentum::new(self.kx + PI, self.ky + PI)
    }

    pub fn transposed(self) -> Self {
        Momentum { kx: self.ky, ky: self.kx }
    }
}

/// Wraps a wavenumber into `[-pi, pi)`.
#[inline]
pub fn wrap_k(k: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let w = k - two_pi * ((k + PI) / two_pi).floor();
    // floor can land exactly on the upper edge through rounding
    if w >= PI {
        w - two_pi
    } else {
        w
    }
}

/// Wraps a difference into `(-pi, pi]`.
#[inline]
pub fn wrap_delta(d: f64) -> f64 {
    -wrap_k(-d)
}

/// Effective field `(h_x, h_y, h_z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldVector {
    pub hx: f64,
    pub hy: f64,
    pub hz: f64,
}

impl FieldVector {
    pub fn new(hx: f64, hy: f64, hz: f64) -> Self {
        FieldVector { hx, hy, hz }
    }

    #[inline]
    pub fn energy(&self) -> f64 {
        (self.hx * self.hx + self.hy * self.hy + self.hz * self.hz).sqrt()
    }

    /// Polar angle in `[0, pi]`; zero for the null field.
    pub fn theta(&self) -> f64 {
        let e = self.energy();
        if e == 0.0 {
            0.0
        } else {
            (self.hz / e).clamp(-1.0, 1.0).acos()
        }
    }

    /// Azimuth in `(-pi, pi]`.
    pub fn phi(&self) -> f64 {
        let p = self.hy.atan2(self.hx);
        if p == -PI {
            PI
        } else {
            p
        }
    }

    pub fn spin_orbit(&self) -> (f64, f64) {
        (self.hx, self.hy)
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.hx, self.hy, self.hz]
    }
}

/// Field of the static Hamiltonian with mass `m_eff` (no `g/t` term).
pub fn static_field(variant: Variant, t0: f64, t_so: f64, m_eff: f64, k: Momentum) -> FieldVector {
    let (hx, hy) = variant.spin_orbit(t_so, k);
    FieldVector { hx, hy, hz: m_eff - t0 * (k.kx.cos() + k.ky.cos()) }
}

/// Instantaneous field `h(k, t)` of the quench Hamiltonian.
pub fn field_at(params: &ModelParams, k: Momentum, t: f64) -> Result<FieldVector> {
    let (hx, hy) = params.variant.spin_orbit(params.t_so, k);
    let mut hz = params.h0_static(k);
    if params.g != 0.0 {
        if t == 0.0 {
            return Err(Error::SingularTime { t, g: params.g });
        }
        hz += params.protocol_sign.value() * params.g / t;
    }
    Ok(FieldVector { hx, hy, hz })
}

/// Field of the pre-quench Hamiltonian of a sudden quench.
pub fn sudden_initial_field(params: &ModelParams, k: Momentum) -> Result<FieldVector> {
    let m = params.m_z_int.ok_or_else(|| Error::InvalidParams("sudden quench needs m_z_int".into()))?;
    Ok(static_field(params.variant, params.t0, params.t_so, m, k))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PhaseLabel {
    pub chern: i32,
    pub trivial: bool,
}

impl PhaseLabel {
    pub fn from_chern(chern: i32) -> Self {
        PhaseLabel { chern, trivial: chern == 0 }
    }
}

/// Chern number of the static Hamiltonian with mass `m_eff`, read off the phase diagram.
pub fn static_phase(m_eff: f64, t0: f64, variant: Variant) -> Result<PhaseLabel> {
    if !(t0 > 0.0) {
        return Err(Error::InvalidParams(format!("t0 must be positive, got {t0}")));
    }
    for &b in variant.boundaries() {
        if (m_eff - b * t0).abs() <= BOUNDARY_TOL {
            return Err(Error::PhaseBoundary { m_eff, boundary: b * t0 });
        }
    }
    let m = m_eff / t0;
    let chern = match variant {
        Variant::Standard => {
            if m > 0.0 && m < 2.0 {
                -1
            } else if m < 0.0 && m > -2.0 {
                1
            } else {
                0
            }
        }
        Variant::HighChern => {
            if m > 1.0 && m < 2.0 {
                -1
            } else if m > 0.0 && m < 1.0 {
                3
            } else if m > -1.0 && m < 0.0 {
                -3
            } else if m > -2.0 && m < -1.0 {
                1
            } else {
                0
            }
        }
    };
    Ok(PhaseLabel::from_chern(chern))
}
