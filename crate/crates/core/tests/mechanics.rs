use std::f64::consts::PI;

use proptest::prelude::*;
use rotkep::mechanics::{
    angular_momentum, eccentricity, from_polar, kepler_energy, mechanical_hamiltonian,
    moser_energy, propagate_polar, rotating_hamiltonian, to_polar, CartesianState, PolarState,
};

fn state() -> impl Strategy<Value = CartesianState> {
    (0.05f64..5.0, 0.0..2.0 * PI, -3.0f64..3.0, -3.0f64..3.0).prop_map(|(r, a, p1, p2)| {
        CartesianState::new([r * a.cos(), r * a.sin()], [p1, p2]).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn moser_scaling(s in state(), k in 0.01f64..50.0) {
        let f = (2.0 * k).sqrt();
        let [q1, q2] = s.q();
        let [p1, p2] = s.p();
        let scaled = CartesianState::new([q1 / f, q2 / f], [f * p1, f * p2]).unwrap();
        let lhs = moser_energy(&scaled, k).unwrap();
        let rhs = f * moser_energy(&s, 0.5).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs().max(1.0));
    }

    #[test]
    fn moser_matches_definition(s in state(), k in 0.01f64..50.0) {
        // |q| (E + k) + 1
        let direct = s.radius() * (kepler_energy(&s) + k) + 1.0;
        let m = moser_energy(&s, k).unwrap();
        prop_assert!((m - direct).abs() <= 1e-12 * m.abs().max(1.0));
    }

    #[test]
    fn hamiltonian_two_ways(s in state()) {
        let a = rotating_hamiltonian(&s);
        let b = mechanical_hamiltonian(&s);
        prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
    }

    #[test]
    fn polar_round_trip(s in state()) {
        let p = to_polar(&s);
        let back = from_polar(&p).unwrap();
        for i in 0..2 {
            prop_assert!((back.q()[i] - s.q()[i]).abs() < 1e-12);
            prop_assert!((back.p()[i] - s.p()[i]).abs() < 1e-12);
        }
        prop_assert!((p.kepler_energy() - kepler_energy(&s)).abs() < 1e-12);
        prop_assert!((p.t - angular_momentum(&s)).abs() < 1e-12);
        prop_assert!((p.hamiltonian(1.0) - rotating_hamiltonian(&s)).abs() < 1e-12);
    }

    #[test]
    fn circular_locus_has_zero_eccentricity(e in -5.0f64..-0.01, sign in prop::bool::ANY) {
        let l = if sign { 1.0 } else { -1.0 } / (-2.0 * e).sqrt();
        prop_assert!(eccentricity(e, l).unwrap() < 1e-6);
        // Off the locus the eccentricity is positive.
        prop_assert!(eccentricity(e, 0.9 * l).unwrap() > 1e-3);
    }
}

/// Drift of E, L and H along RK4 trajectories over ten synodical periods.
#[test]
fn conservation_over_ten_synodical_periods() {
    for (x, r, t) in [
        (1.0, 0.1, 0.9),
        (0.4, -0.2, 0.6),
        (0.7, 0.3, -0.75),
        (0.3, 0.0, 0.5),
    ] {
        let s0 = PolarState::new(x, 0.0, r, t).unwrap();
        let e0 = s0.kepler_energy();
        let w = (-2.0 * e0).powf(1.5);
        let synodic = 2.0 * PI / (w + t.signum()).abs();
        let kepler = 2.0 * PI / w;
        let duration = 10.0 * synodic;
        let steps = (duration / kepler * 20_000.0) as usize;
        let s1 = propagate_polar(&s0, 1.0, duration, steps);
        assert!(
            (s1.kepler_energy() - e0).abs() < 1e-8,
            "E drift at {x} {r} {t}"
        );
        assert!((s1.t - t).abs() < 1e-8);
        assert!((s1.hamiltonian(1.0) - s0.hamiltonian(1.0)).abs() < 1e-8);
    }
}
