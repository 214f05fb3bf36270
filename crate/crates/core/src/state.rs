//! Two-component spinors in the fixed `sigma_z` basis and eigenvectors of `h . sigma`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::FieldVector;

/// Normalized spinor `a_up |up> + a_down |down>`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuantumState {
    pub a_up: Complex64,
    pub a_down: Complex64,
}

impl QuantumState {
    pub const SPIN_UP: QuantumState = QuantumState { a_up: Complex64::new(1.0, 0.0), a_down: Complex64::new(0.0, 0.0) };
    pub const SPIN_DOWN: QuantumState =
        QuantumState { a_up: Complex64::new(0.0, 0.0), a_down: Complex64::new(1.0, 0.0) };

    pub fn new(a_up: Complex64, a_down: Complex64) -> Self {
        QuantumState { a_up, a_down }
    }

    #[inline]
    pub fn norm_sqr(&self) -> f64 {
        self.a_up.norm_sqr() + self.a_down.norm_sqr()
    }

    pub fn normalized(self) -> Self {
        let n = self.norm_sqr().sqrt();
        QuantumState { a_up: self.a_up / n, a_down: self.a_down / n }
    }

    /// `<self|other>`.
    #[inline]
    pub fn inner(&self, other: &QuantumState) -> Complex64 {
        self.a_up.conj() * other.a_up + self.a_down.conj() * other.a_down
    }

    /// Expectation values `(<sigma_x>, <sigma_y>, <sigma_z>)`.
    #[inline]
    pub fn spin(&self) -> [f64; 3] {
        let c = self.a_up.conj() * self.a_down;
        [2.0 * c.re, 2.0 * c.im, self.a_up.norm_sqr() - self.a_down.norm_sqr()]
    }
}

/// Returns `(excited, ground)` eigenvectors of `h . sigma`.
///
/// Phase convention: `a_up` real and nonnegative, or `a_down` real and
/// nonnegative when `a_up` vanishes.
pub fn eigenstates(field: &FieldVector) -> Result<(QuantumState, QuantumState)> {
    let e = field.energy();
    if !(e > 0.0) {
        return Err(Error::Gapless);
    }
    let rho = field.hx.hypot(field.hy);
    // cos(theta/2) and sin(theta/2) without cancellation near either pole
    let (c, s) = if field.hz >= 0.0 {
        let c = ((e + field.hz) / (2.0 * e)).sqrt();
        (c, rho / (2.0 * e * c))
    } else {
        let s = ((e - field.hz) / (2.0 * e)).sqrt();
        (rho / (2.0 * e * s), s)
    };
    let phase = if rho > 0.0 { Complex64::new(field.hx / rho, field.hy / rho) } else { Complex64::new(1.0, 0.0) };

    let excited = if c > 0.0 { QuantumState::new(Complex64::new(c, 0.0), phase * s) } else { QuantumState::SPIN_DOWN };
    let ground = if s > 0.0 { QuantumState::new(Complex64::new(s, 0.0), -phase * c) } else { QuantumState::SPIN_DOWN };
    Ok((excited, ground))
}

/// Eigenvector of `h . sigma` with eigenvalue `-|h|`.
pub fn ground_state(field: &FieldVector) -> Result<QuantumState> {
    eigenstates(field).map(|(_, g)| g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn apply(field: &FieldVector, psi: &QuantumState) -> QuantumState {
        let (x, y, z) = (field.hx, field.hy, field.hz);
        QuantumState::new(
            psi.a_up * z + psi.a_down * Complex64::new(x, -y),
            psi.a_up * Complex64::new(x, y) - psi.a_down * z,
        )
    }

    #[test]
    fn poles_and_equator() {
        let g = ground_state(&FieldVector::new(0.0, 0.0, -1.0)).unwrap();
        assert_eq!(g, QuantumState::SPIN_UP);
        let g = ground_state(&FieldVector::new(0.0, 0.0, 1.0)).unwrap();
        assert_eq!(g, QuantumState::SPIN_DOWN);
        let g = ground_state(&FieldVector::new(1.0, 0.0, 0.0)).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((g.a_up - Complex64::new(r, 0.0)).norm() < 1e-15);
        assert!((g.a_down - Complex64::new(-r, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn gapless_is_rejected() {
        assert_eq!(ground_state(&FieldVector::new(0.0, 0.0, 0.0)), Err(Error::Gapless));
    }

    proptest::proptest! {
        #[test]
        fn eigen_equations_hold(hx in -2.0f64..2.0, hy in -2.0f64..2.0, hz in -2.0f64..2.0) {
            let f = FieldVector::new(hx, hy, hz);
            proptest::prop_assume!(f.energy() > 1e-6);
            let e = f.energy();
            let (up, down) = eigenstates(&f).unwrap();
            let hu = apply(&f, &up);
            let hd = apply(&f, &down);
            proptest::prop_assert!((hu.a_up - up.a_up * e).norm() < 1e-12 && (hu.a_down - up.a_down * e).norm() < 1e-12);
            proptest::prop_assert!((hd.a_up + down.a_up * e).norm() < 1e-12 && (hd.a_down + down.a_down * e).norm() < 1e-12);
            proptest::prop_assert!((up.norm_sqr() - 1.0).abs() < 1e-13);
            proptest::prop_assert!(up.inner(&down).norm() < 1e-13);
            proptest::prop_assert!(down.a_up.im == 0.0 && down.a_up.re >= 0.0);
        }
    }
}
