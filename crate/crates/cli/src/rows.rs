//! Flat records for every table the CLI emits. Field names double as CSV
//! column names, in the order listed.

use rotkep::catalog::{
    AssertionOutcome, CircularOrbit, DynamicalConvexityReport, OrbitKind, OrbitRecord, TorusFamily,
};
use rotkep::levi_civita::{ConvexityReport, Witness};
use serde::{Deserialize, Serialize};

use crate::format::{real, CsvRow};

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(ToString::to_string).unwrap_or_default()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogRow {
    pub kind: String,
    pub branch: Option<String>,
    pub k: Option<u32>,
    pub l: Option<u32>,
    pub name: Option<String>,
    pub kepler_energy: f64,
    pub covering: u32,
    pub contractible: bool,
    /// Integer, half-integer (`5/2`), `RESONANT`, or empty when not computed.
    pub cz_index: Option<String>,
}

impl From<&OrbitRecord> for CatalogRow {
    fn from(r: &OrbitRecord) -> Self {
        let (kind, branch, k, l, name, kepler_energy) = match &r.kind {
            OrbitKind::Circular(o) => (
                "circular",
                Some(o.branch.as_str().to_owned()),
                None,
                None,
                None,
                o.kepler_energy,
            ),
            OrbitKind::Torus(t) => (
                "torus",
                None,
                Some(t.k),
                Some(t.l),
                t.name.map(str::to_owned),
                t.kepler_energy,
            ),
        };
        Self {
            kind: kind.to_owned(),
            branch,
            k,
            l,
            name,
            kepler_energy,
            covering: r.covering(),
            contractible: r.contractible,
            cz_index: r.cz_index.map(|i| i.to_string()),
        }
    }
}

impl CsvRow for CatalogRow {
    const HEADER: &'static [&'static str] = &[
        "kind",
        "branch",
        "k",
        "l",
        "name",
        "kepler_energy",
        "covering",
        "contractible",
        "cz_index",
    ];

    fn fields(&self) -> Vec<String> {
        vec![
            self.kind.clone(),
            opt(&self.branch),
            opt(&self.k),
            opt(&self.l),
            opt(&self.name),
            real(self.kepler_energy),
            self.covering.to_string(),
            self.contractible.to_string(),
            opt(&self.cz_index),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AssertionRow {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

impl From<&AssertionOutcome> for AssertionRow {
    fn from(a: &AssertionOutcome) -> Self {
        Self {
            name: a.name.to_owned(),
            holds: a.holds,
            detail: a.detail.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogOutput {
    pub c: f64,
    pub e_floor: Option<f64>,
    pub n_max: u32,
    pub k_max: u32,
    pub orbits: Vec<CatalogRow>,
    pub assertions: Vec<AssertionRow>,
    pub holds: bool,
}

impl From<&DynamicalConvexityReport> for CatalogOutput {
    fn from(r: &DynamicalConvexityReport) -> Self {
        Self {
            c: r.c,
            e_floor: r.e_floor.is_finite().then_some(r.e_floor),
            n_max: r.n_max,
            k_max: r.k_max,
            orbits: r.records.iter().map(CatalogRow::from).collect(),
            assertions: r.assertions.iter().map(AssertionRow::from).collect(),
            holds: r.holds(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnergyJacobiRow {
    pub c: f64,
    pub e_root: f64,
    pub branch: String,
}

impl EnergyJacobiRow {
    pub fn new(c: f64, orbit: &CircularOrbit) -> Self {
        Self {
            c,
            e_root: orbit.kepler_energy,
            branch: orbit.branch.as_str().to_owned(),
        }
    }
}

impl CsvRow for EnergyJacobiRow {
    const HEADER: &'static [&'static str] = &["c", "e_root", "branch"];

    fn fields(&self) -> Vec<String> {
        vec![real(self.c), real(self.e_root), self.branch.clone()]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorusRow {
    pub k: u32,
    pub l: u32,
    pub name: Option<String>,
    pub e_kl: f64,
    pub c_minus: f64,
    pub c_plus: f64,
    pub cz_index: i64,
}

impl From<&TorusFamily> for TorusRow {
    fn from(t: &TorusFamily) -> Self {
        Self {
            k: t.k,
            l: t.l,
            name: t.name.map(str::to_owned),
            e_kl: t.kepler_energy,
            c_minus: t.c_minus,
            c_plus: t.c_plus,
            cz_index: t.cz_index,
        }
    }
}

impl CsvRow for TorusRow {
    const HEADER: &'static [&'static str] =
        &["k", "l", "name", "e_kl", "c_minus", "c_plus", "cz_index"];

    fn fields(&self) -> Vec<String> {
        vec![
            self.k.to_string(),
            self.l.to_string(),
            opt(&self.name),
            real(self.e_kl),
            real(self.c_minus),
            real(self.c_plus),
            self.cz_index.to_string(),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CzIndexRow {
    pub kepler_energy: f64,
    pub sign: String,
    pub covering: u32,
    pub closed_form: String,
    pub oracle: Option<String>,
    /// `AGREE` or `DISAGREE` when the oracle ran.
    pub verdict: Option<String>,
}

impl CsvRow for CzIndexRow {
    const HEADER: &'static [&'static str] = &[
        "kepler_energy",
        "sign",
        "covering",
        "closed_form",
        "oracle",
        "verdict",
    ];

    fn fields(&self) -> Vec<String> {
        vec![
            real(self.kepler_energy),
            self.sign.clone(),
            self.covering.to_string(),
            self.closed_form.clone(),
            opt(&self.oracle),
            opt(&self.verdict),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub c: f64,
    pub seed: u64,
    pub samples: usize,
    pub ray_misses: usize,
    pub gradient_failures: usize,
    pub negative_count: usize,
    pub min_eigenvalue: f64,
    pub argmin_index: usize,
    pub u1: f64,
    pub u2: f64,
    pub v1: f64,
    pub v2: f64,
    pub dir_u1: f64,
    pub dir_u2: f64,
    pub dir_v1: f64,
    pub dir_v2: f64,
    pub verdict: String,
}

impl ScanRow {
    pub fn new(r: &ConvexityReport, seed: u64) -> Self {
        let [u1, u2, v1, v2] = r.argmin_point.to_array();
        let [dir_u1, dir_u2, dir_v1, dir_v2] = r.argmin_direction;
        Self {
            c: r.c,
            seed,
            samples: r.samples,
            ray_misses: r.ray_misses,
            gradient_failures: r.gradient_failures,
            negative_count: r.negative_count,
            min_eigenvalue: r.min_eigenvalue,
            argmin_index: r.argmin_index,
            u1,
            u2,
            v1,
            v2,
            dir_u1,
            dir_u2,
            dir_v1,
            dir_v2,
            verdict: r.verdict().to_string(),
        }
    }
}

impl CsvRow for ScanRow {
    const HEADER: &'static [&'static str] = &[
        "c",
        "seed",
        "samples",
        "ray_misses",
        "gradient_failures",
        "negative_count",
        "min_eigenvalue",
        "argmin_index",
        "u1",
        "u2",
        "v1",
        "v2",
        "dir_u1",
        "dir_u2",
        "dir_v1",
        "dir_v2",
        "verdict",
    ];

    fn fields(&self) -> Vec<String> {
        vec![
            real(self.c),
            self.seed.to_string(),
            self.samples.to_string(),
            self.ray_misses.to_string(),
            self.gradient_failures.to_string(),
            self.negative_count.to_string(),
            real(self.min_eigenvalue),
            self.argmin_index.to_string(),
            real(self.u1),
            real(self.u2),
            real(self.v1),
            real(self.v2),
            real(self.dir_u1),
            real(self.dir_u2),
            real(self.dir_v1),
            real(self.dir_v2),
            self.verdict.clone(),
        ]
    }
}

/// The analytic non-convexity certificate at `c = 3/2`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessRow {
    pub u1: f64,
    pub u2: f64,
    pub v1: f64,
    pub v2: f64,
    pub dir_u1: f64,
    pub dir_u2: f64,
    pub dir_v1: f64,
    pub dir_v2: f64,
    /// Hessian of `K` on the (unnormalized) direction.
    pub hessian_value: f64,
}

impl From<&Witness> for WitnessRow {
    fn from(w: &Witness) -> Self {
        let [u1, u2, v1, v2] = w.point.to_array();
        let [dir_u1, dir_u2, dir_v1, dir_v2] = w.direction.to_array();
        Self {
            u1,
            u2,
            v1,
            v2,
            dir_u1,
            dir_u2,
            dir_v1,
            dir_v2,
            hessian_value: w.value,
        }
    }
}

impl CsvRow for WitnessRow {
    const HEADER: &'static [&'static str] = &[
        "u1",
        "u2",
        "v1",
        "v2",
        "dir_u1",
        "dir_u2",
        "dir_v1",
        "dir_v2",
        "hessian_value",
    ];

    fn fields(&self) -> Vec<String> {
        [
            self.u1,
            self.u2,
            self.v1,
            self.v2,
            self.dir_u1,
            self.dir_u2,
            self.dir_v1,
            self.dir_v2,
            self.hessian_value,
        ]
        .into_iter()
        .map(real)
        .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanOutput {
    pub report: ScanRow,
    pub witness: Option<WitnessRow>,
}
