use std::fmt::Write as _;

use rayon::prelude::*;
use rotkep::catalog::{
    circular_cz_index, circular_energies, cz_index_oracle, dynamical_convexity_report,
    torus_family, CzIndex,
};
use rotkep::levi_civita::{
    convexity_witness, sample_hypersurface, tangential_min_eigen, ConvexityReport, LcPoint, C_MAX,
    C_MIN, WITNESS_JACOBI,
};
use rotkep::linearized::Orientation;
use rotkep::{ConvexityError, Error};

use crate::args::{
    CatalogArgs, Cli, Command, CzIndexArgs, DiagramArgs, DiagramKind, ScanArgs, Sign,
};
use crate::format::{real, to_csv, to_json, CsvRow, Format};
use crate::rows::{
    CatalogOutput, CatalogRow, CzIndexRow, EnergyJacobiRow, ScanOutput, ScanRow, TorusRow,
    WitnessRow,
};
use crate::{exit, verify};

/// What a command produced: the payload, diagnostics for stderr, and the
/// process exit code.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            ..Self::default()
        }
    }

    fn usage(msg: impl Into<String>) -> Self {
        Self {
            stderr: msg.into() + "\n",
            code: exit::USAGE,
            ..Self::default()
        }
    }

    fn failed(err: impl Into<Error>) -> Self {
        Self {
            stderr: format!("error: {}\n", err.into()),
            code: exit::ASSERTION_FAILED,
            ..Self::default()
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Catalog(a) => catalog(a),
        Command::CzIndex(a) => cz_index(a),
        Command::Diagram(a) => diagram(a),
        Command::ConvexityScan(a) => convexity_scan(a),
        Command::Verify => verify_all(),
    }
}

fn table<T: CsvRow + serde::Serialize>(rows: &[T], format: Format) -> String {
    match format {
        Format::Json => to_json(rows),
        Format::Csv | Format::Text => to_csv(rows),
    }
}

pub fn catalog(a: &CatalogArgs) -> Outcome {
    if !(a.c > 1.5) || !a.c.is_finite() {
        return Outcome::usage(format!(
            "--c must exceed the critical value 3/2, got {}",
            a.c
        ));
    }
    if a.e_floor.is_some_and(f64::is_nan) {
        return Outcome::usage("--e-floor must be a number");
    }
    let floor = a.e_floor.unwrap_or(f64::NEG_INFINITY);
    let report = match dynamical_convexity_report(a.c, floor, a.n_max, a.k_max) {
        Ok(r) => r,
        Err(e) => return Outcome::failed(e),
    };
    let stdout = match a.format {
        Format::Json => to_json(&CatalogOutput::from(&report)),
        Format::Csv => to_csv(
            &report
                .records
                .iter()
                .map(CatalogRow::from)
                .collect::<Vec<_>>(),
        ),
        Format::Text => {
            let mut s = String::new();
            for r in &report.records {
                let _ = writeln!(s, "{r}");
            }
            for x in &report.assertions {
                let _ = writeln!(s, "{} {}", if x.holds { "PASS" } else { "FAIL" }, x.name);
            }
            s
        }
    };
    let mut out = Outcome::ok(stdout);
    for x in report.assertions.iter().filter(|x| !x.holds) {
        let _ = writeln!(out.stderr, "assertion failed: {}: {}", x.name, x.detail);
        out.code = exit::ASSERTION_FAILED;
    }
    out
}

pub fn cz_index(a: &CzIndexArgs) -> Outcome {
    let e = a.energy;
    if !(e < 0.0) || !e.is_finite() {
        return Outcome::usage(format!("--E must be negative, got {e}"));
    }
    if a.covering == 0 {
        return Outcome::usage("--N must be at least 1");
    }
    if a.sign == Sign::Direct && e >= -0.5 {
        return Outcome::usage(format!("direct circular orbits need E < -1/2, got {e}"));
    }
    let orientation = Orientation::from(a.sign);
    let closed = match circular_cz_index(e, orientation, a.covering) {
        Ok(i) => i,
        Err(err) => return Outcome::failed(err),
    };
    let oracle = if a.oracle {
        match cz_index_oracle(e, orientation, a.covering) {
            Ok(i) => Some(i),
            Err(err) => return Outcome::failed(err),
        }
    } else {
        None
    };
    let agree = oracle.map(|o| o == closed);
    let row = CzIndexRow {
        kepler_energy: e,
        sign: match a.sign {
            Sign::Retrograde => "retrograde",
            Sign::Direct => "direct",
        }
        .to_owned(),
        covering: a.covering,
        closed_form: closed.to_string(),
        oracle: oracle.map(|o| o.to_string()),
        verdict: agree.map(|g| if g { "AGREE" } else { "DISAGREE" }.to_owned()),
    };
    let stdout = match a.format {
        Format::Text => match (&row.oracle, &row.verdict) {
            (Some(o), Some(v)) => format!("{} {o} {v}\n", row.closed_form),
            _ => format!("{}\n", row.closed_form),
        },
        Format::Json => to_json(&row),
        Format::Csv => to_csv(&[row]),
    };
    let mut out = Outcome::ok(stdout);
    if agree == Some(false) {
        out.code = exit::DISAGREE;
        out.stderr = format!(
            "closed form {closed} and crossing-form index {} disagree\n",
            oracle.unwrap_or(CzIndex::Resonant)
        );
    }
    out
}

pub fn diagram(a: &DiagramArgs) -> Outcome {
    match a.kind {
        DiagramKind::EnergyJacobi => {
            if !(a.c_min > 0.0 && a.c_min <= a.c_max) || !a.c_max.is_finite() || a.steps == 0 {
                return Outcome::usage("need 0 < --c-min <= --c-max and --steps >= 1");
            }
            Outcome::ok(table(
                &energy_jacobi_rows(a.c_min, a.c_max, a.steps),
                a.format,
            ))
        }
        DiagramKind::LifeOfTori => {
            if a.k_max < 2 {
                return Outcome::usage("--k-max must be at least 2");
            }
            match life_of_tori_rows(a.k_max) {
                Ok(rows) => Outcome::ok(table(&rows, a.format)),
                Err(e) => Outcome::failed(e),
            }
        }
    }
}

/// Circular orbit energies for `c` swept over `steps` equal intervals.
pub fn energy_jacobi_rows(c_min: f64, c_max: f64, steps: u32) -> Vec<EnergyJacobiRow> {
    (0..=steps)
        .flat_map(|i| {
            let c = if i == steps {
                c_max
            } else {
                c_min + (c_max - c_min) * f64::from(i) / f64::from(steps)
            };
            circular_energies(c)
                .into_iter()
                .map(move |o| EnergyJacobiRow::new(c, &o))
        })
        .collect()
}

/// Every torus family `T(k, l)` with `l < k <= k_max`.
pub fn life_of_tori_rows(k_max: u32) -> Result<Vec<TorusRow>, Error> {
    let mut rows = Vec::new();
    for k in 2..=k_max {
        for l in 1..k {
            rows.push(TorusRow::from(&torus_family(k, l)?));
        }
    }
    Ok(rows)
}

/// Same points, kernel and reduction as the library scan, with the per-point
/// work spread over threads. The result does not depend on the schedule.
pub fn parallel_scan(
    c: f64,
    n: usize,
    seed: u64,
    extra: &[LcPoint],
) -> Result<ConvexityReport, ConvexityError> {
    let sample = sample_hypersurface(c, n, seed)?;
    let mut points = sample.points;
    points.extend_from_slice(extra);
    let evals: Vec<_> = points
        .par_iter()
        .map(|p| tangential_min_eigen(p, c))
        .collect();
    ConvexityReport::from_evaluations(c, &points, &evals, sample.ray_misses)
}

pub fn convexity_scan(a: &ScanArgs) -> Outcome {
    if !(a.c > C_MIN && a.c <= C_MAX) {
        return Outcome::usage(format!("--c must lie in ({C_MIN}, {C_MAX}], got {}", a.c));
    }
    if a.samples == 0 {
        return Outcome::usage("--samples must be positive");
    }
    let witness = if a.c == WITNESS_JACOBI {
        match convexity_witness() {
            Ok(w) => Some(w),
            Err(e) => return Outcome::failed(e),
        }
    } else {
        None
    };
    let extra: Vec<LcPoint> = witness.iter().map(|w| w.point).collect();
    let report = match parallel_scan(a.c, a.samples, a.seed, &extra) {
        Ok(r) => r,
        Err(e) => return Outcome::failed(e),
    };
    let output = ScanOutput {
        report: ScanRow::new(&report, a.seed),
        witness: witness.as_ref().map(WitnessRow::from),
    };
    let mut out = Outcome::ok(match a.format {
        Format::Json => to_json(&output),
        Format::Csv => to_csv(std::slice::from_ref(&output.report)),
        Format::Text => {
            let r = &output.report;
            format!(
                "c {}\nsamples {}\nray misses {}\ngradient failures {}\nnegative {}\nmin eigenvalue {}\nverdict: {}\n",
                real(r.c),
                r.samples,
                r.ray_misses,
                r.gradient_failures,
                r.negative_count,
                real(r.min_eigenvalue),
                r.verdict
            )
        }
    });
    if let (Some(w), Format::Csv | Format::Text) = (&output.witness, a.format) {
        out.stderr = format!("analytic witness:\n{}", to_csv(std::slice::from_ref(w)));
    }
    if a.c == WITNESS_JACOBI && !(report.min_eigenvalue < 0.0) {
        out.code = exit::ASSERTION_FAILED;
        let _ = writeln!(out.stderr, "no negative eigenvalue found at c = 3/2");
    }
    out
}

fn verify_all() -> Outcome {
    let results = verify::run_all();
    let mut s = String::new();
    for r in &results {
        let _ = writeln!(s, "{r}");
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    let _ = writeln!(
        s,
        "{} of {} criteria passed",
        results.len() - failed,
        results.len()
    );
    Outcome {
        stdout: s,
        stderr: String::new(),
        code: if failed == 0 {
            exit::SUCCESS
        } else {
            exit::VERIFY_FAILED
        },
    }
}
