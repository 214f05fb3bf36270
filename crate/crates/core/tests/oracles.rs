//! Pointwise cross-checks between independent TASP routes.

use std::f64::consts::PI;

use proptest::prelude::*;
use tasp::dynamics::{tasp_at, tasp_slow_exact, tasp_sudden_closed_form, tasp_time_average, EvolveOptions};
use tasp::{ModelParams, Momentum, ProtocolSign, StartTime, Variant};

fn close(a: [f64; 3], b: [f64; 3], tol: f64) -> bool {
    a.iter().zip(&b).all(|(x, y)| (x - y).abs() < tol)
}

fn momentum() -> impl Strategy<Value = Momentum> {
    (-PI..PI, -PI..PI).prop_map(|(kx, ky)| Momentum::new(kx, ky))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn sudden_projection_matches_time_average(k in momentum(), mi in -3.0..3.0f64, mf in -3.0..3.0f64) {
        let p = ModelParams::sudden(1.0, 0.2, mi, mf, 5000.0);
        let Ok(exact) = tasp_sudden_closed_form(k, mi, mf, 1.0, 0.2, Variant::Standard) else { return Ok(()) };
        let proj = tasp_at(&p, k, &EvolveOptions::default()).unwrap();
        let avg = tasp_time_average(&p, k, 40).unwrap();
        prop_assert!(close(proj.as_array(), exact.as_array(), 1e-9), "{proj:?} vs {exact:?}");
        prop_assert!(close(avg.as_array(), exact.as_array(), 1e-3), "{avg:?} vs {exact:?}");
    }

    #[test]
    fn slow_projection_matches_exact(k in momentum(), m in prop::sample::select(vec![-1.0, 1.0, 3.0])) {
        let p = ModelParams::slow(1.0, 0.2, m, 1.0, ProtocolSign::Plus, StartTime::ZeroPlus, 5000.0);
        let exact = tasp_slow_exact(k, &p).unwrap();
        let num = tasp_at(&p, k, &EvolveOptions::default()).unwrap();
        prop_assert!(close(num.as_array(), exact.as_array(), 2e-3), "{num:?} vs {exact:?}");
        prop_assert!(num.norm() <= 1.0 + 1e-9);
    }

    #[test]
    fn reversed_protocol_is_a_shift_by_pi(k in momentum(), t_int in 0.2..1.0f64) {
        let plus = ModelParams::slow(1.0, 0.2, -1.0, 1.0, ProtocolSign::Plus, StartTime::At(t_int), 5000.0);
        let minus = ModelParams::slow(1.0, 0.2, 1.0, 1.0, ProtocolSign::Minus, StartTime::At(t_int), 5000.0);
        let a = tasp_at(&plus, k, &EvolveOptions::default()).unwrap().as_array();
        let b = tasp_at(&minus, k.shifted_by_pi(), &EvolveOptions::default()).unwrap().as_array();
        prop_assert!(close(a, [-b[0], -b[1], -b[2]], 2e-3), "{a:?} vs {b:?}");
    }

    #[test]
    fn transposing_k_swaps_the_inplane_components(k in momentum()) {
        let p = ModelParams::slow(1.0, 0.2, -1.0, 1.0, ProtocolSign::Plus, StartTime::At(0.5), 5000.0);
        let a = tasp_at(&p, k, &EvolveOptions::default()).unwrap();
        let b = tasp_at(&p, k.transposed(), &EvolveOptions::default()).unwrap();
        prop_assert!(close([a.sx, a.sy, a.sz], [b.sy, b.sx, b.sz], 1e-6), "{a:?} vs {b:?}");
    }
}

#[test]
fn projection_agrees_with_full_integration() {
    let p = ModelParams::slow(1.0, 0.2, -1.0, 1.0, ProtocolSign::Plus, StartTime::At(0.5), 5000.0);
    let full = EvolveOptions { full_integration: true, ..Default::default() };
    for (kx, ky) in [(0.3, 0.1), (1.2, -2.0), (2.5, 2.5), (-0.7, 3.0)] {
        let k = Momentum::new(kx, ky);
        let a = tasp_at(&p, k, &EvolveOptions::default()).unwrap();
        let b = tasp_at(&p, k, &full).unwrap();
        assert!(a.max_abs_diff(&b) < 2e-3, "{k:?}: {a:?} vs {b:?}");
    }
}
