use thiserror::Error;

use crate::model::Momentum;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("field evaluated at t = {t} with g = {g}; the g/t term is singular there")]
    SingularTime { t: f64, g: f64 },

    #[error("m_eff = {m_eff} lies on the phase boundary {boundary}")]
    PhaseBoundary { m_eff: f64, boundary: f64 },

    #[error("lattice Berry flux {flux:.3} on a plaquette is too close to pi; refine the grid (n = {grid_n})")]
    ChernNonConvergence { flux: f64, grid_n: usize },

    #[error("gapless field: energy is zero")]
    Gapless,

    #[error("adaptive step underflow at t = {t} (dt = {dt:e})")]
    StepUnderflow { t: f64, dt: f64 },

    #[error("state norm drifted by {drift:e} at t = {t}")]
    NormDrift { t: f64, drift: f64 },

    #[error("averaging window [{start}, {end}] starts before the projection time {t_switch}")]
    Window { start: f64, end: f64, t_switch: f64 },

    #[error("closed form not applicable: {0}")]
    NotApplicable(String),

    #[error("at k = ({kx:.6}, {ky:.6}): {source}", kx = k.kx, ky = k.ky)]
    AtMomentum { k: Momentum, source: Box<Error> },

    #[error("grid too small: {0}")]
    GridTooSmall(String),

    #[error("dynamical field vanishes on the ring (|v| = {magnitude:e})")]
    DegenerateField { magnitude: f64 },

    #[error("winding {raw:.3} is not close to an integer")]
    Quantization { raw: f64 },

    #[error("ring is not a contractible closed loop on the torus")]
    OpenRing,

    #[error("wrong ring kind for this operation: {0}")]
    RingKind(String),

    #[error("normal direction undefined at ring point {index}")]
    NormalEstimation { index: usize },

    #[error("topological charge at ({kx:.4}, {ky:.4}) lies within one grid spacing of a ring")]
    ChargeOnRing { kx: f64, ky: f64 },

    #[error("no t_so admits a spin-inversion crossing on the diagonal")]
    NoCriticalSolution,

    #[error("spin-inversion crossing exists for every t_so; no finite critical ratio")]
    UnboundedCritical,

    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    pub(crate) fn at(self, k: Momentum) -> Error {
        Error::AtMomentum { k, source: Box::new(self) }
    }
}
