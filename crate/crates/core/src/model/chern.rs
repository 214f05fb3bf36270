//! Lattice Chern number from plaquette link variables of the lower band.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{static_field, ModelParams, Momentum, BOUNDARY_TOL};
use crate::error::{Error, Result};
use crate::state::{ground_state, QuantumState};

/// Global sign mapping the raw lattice Berry-flux sum onto the convention in which
/// the standard model with `0 < m_eff < 2 t0` has Chern number `-1`.
pub const CHERN_SIGN: i32 = -1;

/// Plaquette flux magnitude above which the grid is considered unresolved.
const MAX_PLAQUETTE_FLUX: f64 = 0.9 * PI;

/// Chern number of the lower band of the static Hamiltonian with mass `m_eff`.
///
/// Only `t0`, `t_so` and `variant` are taken from `params`.
pub fn chern_fukui(m_eff: f64, params: &ModelParams, grid_n: usize) -> Result<i32> {
    if grid_n < 20 {
        return Err(Error::GridTooSmall(format!("chern_fukui needs grid_n >= 20, got {grid_n}")));
    }
    for &b in params.variant.boundaries() {
        if (m_eff - b * params.t0).abs() <= BOUNDARY_TOL {
            return Err(Error::PhaseBoundary { m_eff, boundary: b * params.t0 });
        }
    }
    let n = grid_n;
    let dk = 2.0 * PI / n as f64;
    let mut states: Vec<QuantumState> = Vec::with_capacity(n * n);
    for ix in 0..n {
        for iy in 0..n {
            let k = Momentum { kx: -PI + ix as f64 * dk, ky: -PI + iy as f64 * dk };
            let f = static_field(params.variant, params.t0, params.t_so, m_eff, k);
            states.push(ground_state(&f).map_err(|e| e.at(k))?);
        }
    }
    let at = |ix: usize, iy: usize| &states[(ix % n) * n + (iy % n)];
    let link = |a: &QuantumState, b: &QuantumState| -> Complex64 {
        let z = a.inner(b);
        z / z.norm()
    };

    let mut total = 0.0;
    for ix in 0..n {
        for iy in 0..n {
            let u00 = at(ix, iy);
            let u10 = at(ix + 1, iy);
            let u11 = at(ix + 1, iy + 1);
            let u01 = at(ix, iy + 1);
            let w = link(u00, u10) * link(u10, u11) * link(u11, u01) * link(u01, u00);
            let flux = w.arg();
            if flux.abs() > MAX_PLAQUETTE_FLUX {
                return Err(Error::ChernNonConvergence { flux, grid_n });
            }
            total += flux;
        }
    }
    let raw = total / (2.0 * PI);
    Ok(CHERN_SIGN * raw.round() as i32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{static_phase, ProtocolSign, StartTime, Variant};

    fn params(variant: Variant) -> ModelParams {
        ModelParams::slow(1.0, 0.2, 1.0, 1.0, ProtocolSign::Plus, StartTime::ZeroPlus, 5000.0).with_variant(variant)
    }

    #[test]
    fn standard_examples() {
        assert_eq!(chern_fukui(1.0, &params(Variant::Standard), 60).unwrap(), -1);
        assert_eq!(chern_fukui(-1.0, &params(Variant::Standard), 60).unwrap(), 1);
        assert_eq!(chern_fukui(3.0, &params(Variant::Standard), 60).unwrap(), 0);
    }

    #[test]
    fn high_chern_examples() {
        assert_eq!(chern_fukui(-0.5, &params(Variant::HighChern), 60).unwrap(), -3);
        assert_eq!(chern_fukui(0.5, &params(Variant::HighChern), 60).unwrap(), 3);
    }

    #[test]
    fn agrees_with_phase_diagram() {
        for variant in [Variant::Standard, Variant::HighChern] {
            for m in [-2.5, -1.5, -0.5, 0.5, 1.5, 2.5] {
                let expected = static_phase(m, 1.0, variant).unwrap().chern;
                assert_eq!(chern_fukui(m, &params(variant), 48).unwrap(), expected, "{variant} m={m}");
            }
        }
    }

    #[test]
    fn grid_independent_above_40() {
        for m in [-1.2, -0.4, 0.6, 1.7, 2.4] {
            let p = params(Variant::Standard);
            let a = chern_fukui(m, &p, 41).unwrap();
            for n in [57, 80, 101] {
                assert_eq!(chern_fukui(m, &p, n).unwrap(), a);
            }
        }
    }

    #[test]
    fn coarse_grid_and_boundary_errors() {
        let p = params(Variant::Standard);
        assert!(matches!(chern_fukui(1.0, &p, 10), Err(Error::GridTooSmall(_))));
        assert!(matches!(chern_fukui(0.0, &p, 40), Err(Error::PhaseBoundary { .. })));
        // band inversion confined inside the single plaquette around k = 0 (odd n)
        assert!(matches!(chern_fukui(1.978, &p, 21), Err(Error::ChernNonConvergence { .. })));
    }
}
