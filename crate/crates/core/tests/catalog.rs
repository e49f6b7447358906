use proptest::prelude::*;
use rotkep::catalog::{
    birth_covering_check, circular_cz_index, circular_energies, cz_index_oracle,
    death_covering_check, dynamical_convexity_report, index_bookkeeping, jacobi_of_circular,
    torus_family, Branch, CzIndex, OrbitKind,
};
use rotkep::linearized::Orientation;

/// Real roots of `2E(c + E)^2 + 1` on `[-20, 0)` by a dense sign scan.
fn scanned_roots(c: f64) -> Vec<f64> {
    let f = |e: f64| 2.0 * e * (c + e) * (c + e) + 1.0;
    let n = 400_000;
    let (lo, hi) = (-(c + 20.0), -1e-9);
    let h = (hi - lo) / n as f64;
    let mut out = Vec::new();
    for i in 0..n {
        let (mut a, mut b) = (lo + i as f64 * h, lo + (i + 1) as f64 * h);
        if (f(a) < 0.0) != (f(b) < 0.0) {
            for _ in 0..80 {
                let m = 0.5 * (a + b);
                if (f(m) < 0.0) == (f(a) < 0.0) {
                    a = m
                } else {
                    b = m
                }
            }
            out.push(0.5 * (a + b));
        }
    }
    out
}

#[test]
fn cubic_roots_match_scan() {
    for c in [1.55, 1.7, 2.0, 2.5, 3.0, 5.0, 10.0, 40.0] {
        let roots = circular_energies(c);
        let scan = scanned_roots(c);
        assert_eq!(roots.len(), scan.len(), "c = {c}");
        for (r, s) in roots.iter().zip(&scan) {
            assert!((r.kepler_energy - s).abs() < 1e-10, "c = {c}");
            let e = r.kepler_energy;
            assert!((2.0 * e * (c + e) * (c + e) + 1.0).abs() < 1e-10);
            let l = r.angular_momentum;
            assert!((2.0 * e * l * l + 1.0).abs() < 1e-12 * (1.0 + l * l));
            assert_eq!(r.branch == Branch::Retrograde, l > 0.0);
            assert_eq!(r.branch == Branch::Unbounded, e > -0.5);
            assert!((jacobi_of_circular(e, r.branch.orientation()) - c).abs() < 1e-10);
        }
    }
}

/// 200 tuples `(E, orientation, N)` spread over `E in [-5, -0.55]`.
fn grid() -> Vec<(f64, Orientation, u32)> {
    (0..200)
        .map(|i| {
            let e = -5.0 + 4.45 * ((i as f64 * 0.618_033_988_75) % 1.0);
            let o = if i % 2 == 0 {
                Orientation::Retrograde
            } else {
                Orientation::Direct
            };
            (e, o, 1 + (i % 8) as u32)
        })
        .collect()
}

#[test]
fn closed_form_index_equals_oracle_on_grid() {
    let mut checked = 0;
    for (e, o, n) in grid() {
        let closed = circular_cz_index(e, o, n).unwrap();
        if closed == CzIndex::Resonant {
            continue;
        }
        let oracle = cz_index_oracle(e, o, n).unwrap();
        assert_eq!(closed, oracle, "E = {e}, {o:?}, N = {n}");
        let value = closed.as_integer().unwrap();
        assert_eq!(value.rem_euclid(2), 1, "indices are odd");
        checked += 1;
    }
    assert!(checked >= 195);
}

#[test]
fn resonant_orbits_are_flagged_by_both_routes() {
    for (k, l) in [(2, 1), (3, 1), (5, 2)] {
        let t = torus_family(k, l).unwrap();
        let e = t.kepler_energy;
        assert_eq!(
            circular_cz_index(e, Orientation::Direct, k - l).unwrap(),
            CzIndex::Resonant
        );
        assert_eq!(
            cz_index_oracle(e, Orientation::Direct, k - l).unwrap(),
            CzIndex::Resonant
        );
    }
}

#[test]
fn coverings_and_bookkeeping_up_to_twelve() {
    for k in 2..=12u32 {
        for l in 1..k {
            assert_eq!(birth_covering_check(k, l).unwrap(), k - l);
            assert_eq!(death_covering_check(k, l).unwrap(), k + l);
            let t = torus_family(k, l).unwrap();
            assert_eq!(t.cz_index, 2 * i64::from(k) - 1);
            assert_eq!(index_bookkeeping(k, l).unwrap(), t.cz_index);
            assert!(t.c_minus > t.c_plus);
            let e = -0.5 * (f64::from(k) / f64::from(l)).powf(2.0 / 3.0);
            assert!((t.kepler_energy - e).abs() < 1e-12);
        }
    }
}

#[test]
fn c_minus_of_neighbouring_resonances_decreases_to_critical() {
    let values: Vec<f64> = (2..=30)
        .map(|k| torus_family(k, k - 1).unwrap().c_minus)
        .collect();
    for w in values.windows(2) {
        assert!(w[1] < w[0]);
    }
    let last = *values.last().unwrap();
    assert!(last > 1.5 && last - 1.5 < 2e-3);
}

#[test]
fn reports_satisfy_contractibility_rule() {
    for c in [1.51, 1.55, 1.6, 1.7, 2.0, 3.0, 5.0, 10.0] {
        let r = dynamical_convexity_report(c, f64::NEG_INFINITY, 12, 12).unwrap();
        r.ensure().unwrap();
        for rec in &r.records {
            assert_eq!(rec.contractible, rec.covering() % 2 == 0);
            if rec.contractible {
                if let Some(i) = rec.cz_index.and_then(CzIndex::as_integer) {
                    assert!(i >= 3);
                }
            }
            if let OrbitKind::Torus(t) = rec.kind {
                assert!(t.alive_at(c));
            }
        }
    }
}

#[test]
fn energy_floor_filters_tori() {
    let all = dynamical_convexity_report(1.55, f64::NEG_INFINITY, 4, 10).unwrap();
    let floored = dynamical_convexity_report(1.55, -0.8, 4, 10).unwrap();
    let count = |r: &rotkep::catalog::DynamicalConvexityReport| {
        r.records
            .iter()
            .filter(|x| matches!(x.kind, OrbitKind::Torus(_)))
            .count()
    };
    assert!(count(&floored) < count(&all));
    assert!(floored.records.iter().all(|x| match x.kind {
        OrbitKind::Torus(t) => t.kepler_energy >= -0.8,
        _ => true,
    }));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closed_form_matches_oracle(e in -5.0f64..-0.55, retro in prop::bool::ANY, n in 1u32..=8) {
        let o = if retro { Orientation::Retrograde } else { Orientation::Direct };
        let closed = circular_cz_index(e, o, n).unwrap();
        prop_assume!(closed != CzIndex::Resonant);
        prop_assert_eq!(cz_index_oracle(e, o, n).unwrap(), closed);
    }
}
