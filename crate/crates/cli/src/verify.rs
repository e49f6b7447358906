//! The acceptance suite. Each check recomputes its reference values
//! independently of the code under test where that is possible.

use std::f64::consts::PI;
use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rotkep::catalog::{
    birth_covering_check, circular_cz_index, circular_energies, cz_index_oracle,
    death_covering_check, dynamical_convexity_report, index_bookkeeping, torus_family, Branch,
    CzIndex, OrbitKind,
};
use rotkep::levi_civita::{
    convexity_witness, gradient_form, hessian_form, lc_energy, lc_gradient, lc_hessian, LcPoint,
};
use rotkep::linearized::{
    closed_form_matrix, numeric_monodromy_path, CircularOrbitSeed, Orientation,
    DEFAULT_STEP_CONTROL,
};
use rotkep::mechanics::{moser_energy, propagate_polar, CartesianState, PolarState};

use crate::commands::parallel_scan;

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:>2} {:<34} {} [{:.3} s]",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

type Check = fn() -> (bool, String);

pub const CRITERIA: [(u8, &str, Check); 11] = [
    (1, "witness reproduction", witness),
    (2, "Hekuba birth energy", hekuba_birth),
    (3, "closed form vs oracle grid", index_grid),
    (4, "index landmarks", landmarks),
    (5, "torus indices", torus_indices),
    (6, "covering numbers", coverings),
    (7, "dynamical convexity truncations", dynamical_convexity),
    (8, "cubic degeneration at c = 3/2", cubic_degeneration),
    (9, "numeric vs closed-form monodromy", monodromy),
    (10, "convexity scan sanity", scan_sanity),
    (11, "conservation and calculus", conservation_and_calculus),
];

pub fn run(id: u8) -> Option<CriterionResult> {
    let &(id, title, check) = CRITERIA.iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let (passed, detail) = check();
    Some(CriterionResult {
        id,
        title,
        passed,
        detail,
        elapsed: start.elapsed(),
    })
}

pub fn run_all() -> Vec<CriterionResult> {
    CRITERIA.iter().filter_map(|c| run(c.0)).collect()
}

fn witness() -> (bool, String) {
    let start = Instant::now();
    let w = convexity_witness();
    let elapsed = start.elapsed();
    let w = match w {
        Ok(w) => w,
        Err(e) => return (false, e.to_string()),
    };
    let s5 = 5.0f64.sqrt();
    let expected = 1.5 * (11.0 / 5.0 - s5);
    let a = (1.0 + s5) / 4.0;
    let u2 = 0.9 * s5 - 1.5;
    let point_ok = w.point == LcPoint::new([0.0, w.point.u[1]], [0.5, 0.0])
        && (w.point.u[1] + a).abs() < 1e-15;
    let dir_ok = (w.direction.u[1] - u2).abs() < 1e-14 && w.direction.v == [1.0, 0.0];
    let on_level = lc_energy(&w.point, 1.5).abs() < 1e-14;
    let tangent = gradient_form(&w.point, 1.5, &w.direction).abs() < 1e-14;
    let printed = (hessian_form(&w.point, 1.5, &w.direction) - expected).abs() <= 1e-12;
    let err = (w.value - expected).abs();
    let fast = elapsed < Duration::from_millis(1);
    (
        err <= 1e-12 && point_ok && dir_ok && on_level && tangent && printed && fast,
        format!(
            "value {:.15} (error {err:.1e}), {} us",
            w.value,
            elapsed.as_micros()
        ),
    )
}

fn hekuba_birth() -> (bool, String) {
    let t = match torus_family(2, 1) {
        Ok(t) => t,
        Err(e) => return (false, e.to_string()),
    };
    let closed = 2.0 * 2.0f64.powf(-1.0 / 3.0);
    let err = (t.c_minus - closed).abs();
    (
        err <= 1e-12 && (t.c_minus - 1.59).abs() <= 0.005 && t.name == Some("Hekuba"),
        format!("c- = {:.13} (error {err:.1e})", t.c_minus),
    )
}

/// Tuples `(E, orientation, N)` with `E` on a golden-ratio sequence in
/// `[-5, -0.55]`, keeping the first 200 non-resonant ones.
pub fn index_grid_tuples() -> Vec<(f64, Orientation, u32)> {
    let mut out = Vec::new();
    let mut i = 0u32;
    while out.len() < 200 {
        let e = -5.0 + 4.45 * ((f64::from(i) * 0.618_033_988_749_895) % 1.0);
        let o = if i.is_multiple_of(2) {
            Orientation::Retrograde
        } else {
            Orientation::Direct
        };
        let n = 1 + i % 8;
        if circular_cz_index(e, o, n) != Ok(CzIndex::Resonant) {
            out.push((e, o, n));
        }
        i += 1;
    }
    out
}

fn index_grid() -> (bool, String) {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (e, o, n) in index_grid_tuples() {
        let closed = circular_cz_index(e, o, n);
        let oracle = cz_index_oracle(e, o, n);
        let agree =
            matches!((&closed, &oracle), (Ok(a), Ok(b)) if a == b && a.as_integer().is_some());
        if !agree {
            failures.push(format!("E={e} {o:?} N={n}: {closed:?} vs {oracle:?}"));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    (
        failures.is_empty() && secs < 30.0,
        if failures.is_empty() {
            "200 tuples agree".to_owned()
        } else {
            format!("{} failures, first {}", failures.len(), failures[0])
        },
    )
}

fn landmarks() -> (bool, String) {
    let cases = [
        (-2.0, Orientation::Retrograde, 1, 1),
        (-2.0, Orientation::Retrograde, 2, 3),
        (-2.0, Orientation::Direct, 1, 3),
        (-0.7, Orientation::Direct, 1, 5),
    ];
    let mut bad = Vec::new();
    for (e, o, n, want) in cases {
        let got = circular_cz_index(e, o, n)
            .ok()
            .and_then(CzIndex::as_integer);
        if got != Some(want) {
            bad.push(format!("E={e} {o:?} N={n}: {got:?} != {want}"));
        }
    }
    (
        bad.is_empty(),
        if bad.is_empty() {
            "1, 3, 3, 5".to_owned()
        } else {
            bad.join("; ")
        },
    )
}

fn torus_indices() -> (bool, String) {
    let mut bad = Vec::new();
    for k in 2..=12u32 {
        for l in 1..k {
            let want = 2 * i64::from(k) - 1;
            let t = torus_family(k, l).map(|t| t.cz_index);
            let b = index_bookkeeping(k, l);
            if t != Ok(want) || b != Ok(want) {
                bad.push(format!("T({k},{l}): {t:?} / {b:?}"));
            }
        }
    }
    for (k, l, name, want) in [
        (2, 1, "Hekuba", 3),
        (3, 2, "Hilda", 5),
        (4, 3, "Thule", 7),
        (3, 1, "Hestia", 5),
        (7, 4, "Cybele", 13),
    ] {
        match torus_family(k, l) {
            Ok(t) if t.name == Some(name) && t.cz_index == want => {}
            other => bad.push(format!("{name}: {other:?}")),
        }
    }
    (
        bad.is_empty(),
        if bad.is_empty() {
            "66 families and 5 named rows".to_owned()
        } else {
            bad.join("; ")
        },
    )
}

fn coverings() -> (bool, String) {
    let mut bad = Vec::new();
    for k in 2..=12u32 {
        for l in 1..k {
            let b = birth_covering_check(k, l);
            let d = death_covering_check(k, l);
            if b != Ok(k - l) || d != Ok(k + l) {
                bad.push(format!("T({k},{l}): {b:?} / {d:?}"));
            }
        }
    }
    (
        bad.is_empty(),
        if bad.is_empty() {
            "k - l and k + l for k <= 12".to_owned()
        } else {
            bad.join("; ")
        },
    )
}

fn dynamical_convexity() -> (bool, String) {
    let mut violations = Vec::new();
    let mut orbits = 0;
    for c in [1.55, 1.7, 2.0, 3.0, 5.0, 10.0] {
        let report = match dynamical_convexity_report(c, f64::NEG_INFINITY, 20, 20) {
            Ok(r) => r,
            Err(e) => return (false, format!("c = {c}: {e}")),
        };
        orbits += report.records.len();
        let is_retro = |k: &OrbitKind, n: u32| matches!(k, OrbitKind::Circular(o) if o.branch == Branch::Retrograde && o.covering == n);
        let mut index3 = Vec::new();
        let mut index1 = Vec::new();
        for r in &report.records {
            let Some(i) = r.cz_index.and_then(CzIndex::as_integer) else {
                continue;
            };
            if r.contractible && i < 3 {
                violations.push(format!("c = {c}: {r}"));
            }
            if r.contractible && i == 3 {
                index3.push(r);
            }
            if i == 1 {
                index1.push(r);
            }
        }
        if index3.len() != 1 || !is_retro(&index3[0].kind, 2) {
            violations.push(format!(
                "c = {c}: {} contractible index-3 orbits",
                index3.len()
            ));
        }
        if index1.len() != 1 || !is_retro(&index1[0].kind, 1) {
            violations.push(format!("c = {c}: {} index-1 orbits", index1.len()));
        }
        if !report.holds() {
            violations.push(format!("c = {c}: report assertions fail"));
        }
    }
    (
        violations.is_empty(),
        if violations.is_empty() {
            format!("{orbits} orbits, no violations")
        } else {
            violations.join("; ")
        },
    )
}

fn cubic_degeneration() -> (bool, String) {
    let roots = circular_energies(1.5);
    let double = roots
        .iter()
        .find(|r| (r.kepler_energy + 0.5).abs() <= 1e-10 && r.multiplicity == 2);
    let simple = roots
        .iter()
        .find(|r| (r.kepler_energy + 2.0).abs() <= 1e-10 && r.branch == Branch::Retrograde);
    // 2E(3/2 + E)^2 + 1 = 2(E + 2)(E + 1/2)^2
    let factored = roots.iter().all(|r| {
        let e = r.kepler_energy;
        let cubic = 2.0 * e * (1.5 + e).powi(2) + 1.0;
        let product = 2.0 * (e + 2.0) * (e + 0.5).powi(2);
        cubic.abs() <= 1e-10 && (cubic - product).abs() <= 1e-12
    });
    (
        roots.len() == 2 && double.is_some() && simple.is_some() && factored,
        format!(
            "roots {:?}",
            roots
                .iter()
                .map(|r| (r.kepler_energy, r.multiplicity))
                .collect::<Vec<_>>()
        ),
    )
}

fn monodromy() -> (bool, String) {
    let mut worst: f64 = 0.0;
    for t0 in [0.4, 0.5, 1.0, 1.5] {
        let seed = match CircularOrbitSeed::from_angular_momentum(t0) {
            Ok(s) => s,
            Err(e) => return (false, e.to_string()),
        };
        let duration = 2.0 * PI / seed.angular_speed().abs();
        let path = match numeric_monodromy_path(&seed, duration, DEFAULT_STEP_CONTROL) {
            Ok(p) => p,
            Err(e) => return (false, format!("t0 = {t0}: {e}")),
        };
        for i in 0..=1000 {
            let s = duration * f64::from(i) / 1000.0;
            worst = worst.max((path.eval(s) - closed_form_matrix(&seed, s)).max_abs());
        }
    }
    (worst < 1e-8, format!("max deviation {worst:.2e}"))
}

fn scan_sanity() -> (bool, String) {
    let start = Instant::now();
    let w = match convexity_witness() {
        Ok(w) => w,
        Err(e) => return (false, e.to_string()),
    };
    let critical = parallel_scan(1.5, 10_000, 7, &[w.point]);
    let below = parallel_scan(1.45, 100_000, 7, &[]);
    let secs = start.elapsed().as_secs_f64();
    match (critical, below) {
        (Ok(a), Ok(b)) => (
            a.min_eigenvalue < 0.0 && b.min_eigenvalue < 0.0 && secs < 60.0,
            format!(
                "min {:.3e} at 3/2, {:.3e} at 1.45 ({} negative of {})",
                a.min_eigenvalue, b.min_eigenvalue, b.negative_count, b.samples
            ),
        ),
        (a, b) => (false, format!("{:?} / {:?}", a.err(), b.err())),
    }
}

fn shifted(p: &LcPoint, i: usize, h: f64) -> LcPoint {
    let mut a = p.to_array();
    a[i] += h;
    LcPoint::from_array(a)
}

fn conservation_and_calculus() -> (bool, String) {
    let mut bad = Vec::new();

    let mut drift: f64 = 0.0;
    for (x, r, t) in [
        (1.0, 0.1, 0.9),
        (0.4, -0.2, 0.6),
        (0.7, 0.3, -0.75),
        (0.3, 0.0, 0.5),
    ] {
        let Ok(s0) = PolarState::new(x, 0.0, r, t) else {
            continue;
        };
        let e0 = s0.kepler_energy();
        let w = (-2.0 * e0).powf(1.5);
        let duration = 10.0 * 2.0 * PI / (w + t.signum()).abs();
        let steps = (duration * w / (2.0 * PI) * 20_000.0) as usize;
        let s1 = propagate_polar(&s0, 1.0, duration, steps);
        drift = drift
            .max((s1.kepler_energy() - e0).abs())
            .max((s1.t - t).abs())
            .max((s1.hamiltonian(1.0) - s0.hamiltonian(1.0)).abs());
    }
    if !(drift < 1e-8) {
        bad.push(format!("drift {drift:.1e}"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut grad_err, mut hess_err): (f64, f64) = (0.0, 0.0);
    for _ in 0..1000 {
        let p = LcPoint::from_array(std::array::from_fn(|_| rng.random_range(-1.5..1.5)));
        let c = rng.random_range(1.4..10.0);
        let g = lc_gradient(&p, c);
        let gscale = g.iter().fold(1.0f64, |m, x| m.max(x.abs()));
        let h1 = 1e-6;
        for i in 0..4 {
            let fd = (lc_energy(&shifted(&p, i, h1), c) - lc_energy(&shifted(&p, i, -h1), c))
                / (2.0 * h1);
            grad_err = grad_err.max((fd - g[i]).abs() / gscale);
        }
        let h = lc_hessian(&p, c);
        let hscale = h.iter().flatten().fold(1.0f64, |m, x| m.max(x.abs()));
        let h2 = 1e-4;
        for i in 0..4 {
            for j in 0..4 {
                let k = |a: f64, b: f64| lc_energy(&shifted(&shifted(&p, i, a), j, b), c);
                let fd = (k(h2, h2) - k(h2, -h2) - k(-h2, h2) + k(-h2, -h2)) / (4.0 * h2 * h2);
                hess_err = hess_err.max((fd - h[i][j]).abs() / hscale);
            }
        }
    }
    if !(grad_err <= 1e-7 && hess_err <= 1e-5) {
        bad.push(format!(
            "finite differences {grad_err:.1e} / {hess_err:.1e}"
        ));
    }

    let mut moser_err: f64 = 0.0;
    for _ in 0..1000 {
        let (r, a): (f64, f64) = (rng.random_range(0.05..5.0), rng.random_range(0.0..2.0 * PI));
        let (p1, p2) = (rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
        let k: f64 = rng.random_range(0.01..50.0);
        let f = (2.0 * k).sqrt();
        let (q1, q2) = (r * a.cos(), r * a.sin());
        let (Ok(s), Ok(scaled)) = (
            CartesianState::new([q1, q2], [p1, p2]),
            CartesianState::new([q1 / f, q2 / f], [f * p1, f * p2]),
        ) else {
            bad.push("state rejected".to_owned());
            break;
        };
        match (moser_energy(&scaled, k), moser_energy(&s, 0.5)) {
            (Ok(lhs), Ok(rhs)) => {
                moser_err = moser_err.max((lhs - f * rhs).abs() / (f * rhs).abs().max(1.0));
            }
            _ => bad.push("moser energy rejected a state".to_owned()),
        }
    }
    if !(moser_err <= 1e-12) {
        bad.push(format!("Moser scaling {moser_err:.1e}"));
    }

    (
        bad.is_empty(),
        if bad.is_empty() {
            format!("drift {drift:.1e}, fd {grad_err:.1e}/{hess_err:.1e}, Moser {moser_err:.1e}")
        } else {
            bad.join("; ")
        },
    )
}
