//! Robbin-Salamon index of paths in `Sp(2)`.
//!
//! A crossing of `psi: [0, T] -> Sp(2)` is a time `s` with
//! `det(psi(s) - 1) = 0`. On `ker(psi(s) - 1)` the crossing form is
//! `Q(v) = w0(v, psi'(s) v)` with `w0(u, w) = u1 w2 - u2 w1`, and the index is
//!
//! ```text
//! mu = sgn(Q_0)/2 + sum_{0 < s < T} sgn(Q_s) + sgn(Q_T)/2
//! ```
//!
//! For `Sp(2)`, `det(psi - 1) = 2 - tr(psi)`. Elliptic paths touch zero without
//! changing sign, so the search brackets both sign changes of the determinant
//! and sign changes of its derivative.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;
use core::ops::Add;

// Unused when std is linked and the inherent f64 methods take over.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::MaslovError;
use crate::linalg::Mat2;

/// Largest allowed `|det M - 1|` for stored or sampled matrices.
pub const SYMPLECTIC_TOL: f64 = 5e-10;

const KERNEL_TOL: f64 = 1e-8;
const DEGENERACY_REL: f64 = 1e-10;
const PERTURBATION_AMPLITUDES: [f64; 2] = [1e-4, 1e-2];

/// An exact half-integer, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HalfInteger {
    twice: i64,
}

impl HalfInteger {
    pub const ZERO: HalfInteger = HalfInteger { twice: 0 };

    pub const fn from_twice(twice: i64) -> Self {
        Self { twice }
    }

    pub const fn from_integer(n: i64) -> Self {
        Self { twice: 2 * n }
    }

    /// Numerator over the fixed denominator 2.
    pub const fn twice(self) -> i64 {
        self.twice
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub fn to_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.twice / 2)
    }

    pub fn to_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }
}

impl Add for HalfInteger {
    type Output = HalfInteger;
    fn add(self, o: HalfInteger) -> HalfInteger {
        HalfInteger::from_twice(self.twice + o.twice)
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_integer() {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "{}/2", self.twice),
        }
    }
}

/// `sin^2` bump on `[start, end]`.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Bump {
    start: f64,
    end: f64,
}

impl Bump {
    fn value_and_slope(&self, s: f64) -> (f64, f64) {
        if s <= self.start || s >= self.end {
            return (0.0, 0.0);
        }
        let w = PI / (self.end - self.start);
        let (sin, cos) = (w * (s - self.start)).sin_cos();
        (sin * sin, 2.0 * w * sin * cos)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum PathKind {
    /// `exp(s A)`.
    Generator(Mat2),
    /// Uniform samples starting at time 0, with finite-difference derivatives.
    Sampled {
        step: f64,
        mats: Vec<Mat2>,
        derivs: Vec<Mat2>,
    },
    /// `exp(eps beta(s) J) base(s)` with `beta` a sum of disjoint bumps.
    Perturbed {
        base: Box<SymplecticPath>,
        bumps: Vec<Bump>,
        eps: f64,
    },
}

/// A path of 2x2 symplectic matrices on `[0, duration]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticPath {
    kind: PathKind,
    offset: f64,
    duration: f64,
}

fn check_duration(duration: f64) -> Result<(), MaslovError> {
    if duration > 0.0 && duration.is_finite() {
        Ok(())
    } else {
        Err(MaslovError::InvalidDuration(duration))
    }
}

impl SymplecticPath {
    /// The one-parameter group `s -> exp(s A)`; `A` must be traceless.
    pub fn from_generator(generator: Mat2, duration: f64) -> Result<Self, MaslovError> {
        check_duration(duration)?;
        let trace = generator.trace();
        if trace.abs() > 1e-12 * generator.max_abs().max(1.0) {
            return Err(MaslovError::NotHamiltonian(trace));
        }
        Ok(Self {
            kind: PathKind::Generator(generator),
            offset: 0.0,
            duration,
        })
    }

    /// Samples `mats[i]` at times `i * step`. Derivatives come from
    /// fourth-order finite differences; values between samples from cubic
    /// Hermite interpolation rescaled to unit determinant.
    pub fn from_samples(step: f64, mats: Vec<Mat2>) -> Result<Self, MaslovError> {
        if mats.len() < 5 || !(step > 0.0) || !step.is_finite() {
            return Err(MaslovError::InvalidSamples);
        }
        if let Some(bad) = mats.iter().find(|m| (m.det() - 1.0).abs() > SYMPLECTIC_TOL) {
            return Err(MaslovError::NotSymplectic(bad.det()));
        }
        let derivs = finite_difference(&mats, step);
        let duration = step * (mats.len() - 1) as f64;
        Ok(Self {
            kind: PathKind::Sampled { step, mats, derivs },
            offset: 0.0,
            duration,
        })
    }

    pub fn duration(&self) -> f64 {
        self.duration
    }

    /// The generator, for paths of the form `exp(s A)`.
    pub fn generator(&self) -> Option<Mat2> {
        match &self.kind {
            PathKind::Generator(a) => Some(*a),
            _ => None,
        }
    }

    /// The sub-path on `[start, end]`, re-based to start at time 0.
    pub fn restrict(&self, start: f64, end: f64) -> Result<Self, MaslovError> {
        if !(0.0..end).contains(&start) || end > self.duration * (1.0 + 1e-15) {
            return Err(MaslovError::InvalidDuration(end - start));
        }
        check_duration(end - start)?;
        Ok(Self {
            kind: self.kind.clone(),
            offset: self.offset + start,
            duration: end - start,
        })
    }

    pub fn eval(&self, s: f64) -> Mat2 {
        self.eval_with_derivative(s).0
    }

    pub fn derivative(&self, s: f64) -> Mat2 {
        self.eval_with_derivative(s).1
    }

    /// `(psi(s), psi'(s))`.
    pub fn eval_with_derivative(&self, s: f64) -> (Mat2, Mat2) {
        let tau = self.offset + s;
        match &self.kind {
            PathKind::Generator(a) => {
                let m = a.exp_traceless(tau);
                (m, *a * m)
            }
            PathKind::Sampled { step, mats, derivs } => hermite(*step, mats, derivs, tau),
            PathKind::Perturbed { base, bumps, eps } => {
                let (beta, slope) = bumps.iter().fold((0.0, 0.0), |(b, d), bump| {
                    let (bv, bd) = bump.value_and_slope(tau);
                    (b + bv, d + bd)
                });
                let rot = Mat2::J.exp_traceless(eps * beta);
                let (m, dm) = base.eval_with_derivative(tau);
                let value = rot * m;
                (value, Mat2::J * value.scale(eps * slope) + rot * dm)
            }
        }
    }

    /// Largest `|psi'|` on a coarse grid; the scale for degeneracy tests.
    fn derivative_scale(&self) -> f64 {
        (0..=64)
            .map(|i| self.derivative(self.duration * i as f64 / 64.0).max_abs())
            .fold(0.0, f64::max)
    }
}

fn finite_difference(mats: &[Mat2], step: f64) -> Vec<Mat2> {
    let n = mats.len();
    let combo = |idx: [usize; 5], w: [f64; 5]| {
        idx.iter().zip(w).fold(Mat2::ZERO, |acc, (&i, wi)| {
            acc + mats[i].scale(wi / (12.0 * step))
        })
    };
    (0..n)
        .map(|i| match i {
            0 => combo([0, 1, 2, 3, 4], [-25.0, 48.0, -36.0, 16.0, -3.0]),
            1 => combo([0, 1, 2, 3, 4], [-3.0, -10.0, 18.0, -6.0, 1.0]),
            _ if i + 2 >= n && i + 1 < n => combo(
                [n - 1, n - 2, n - 3, n - 4, n - 5],
                [3.0, 10.0, -18.0, 6.0, -1.0],
            ),
            _ if i + 1 == n => combo(
                [n - 1, n - 2, n - 3, n - 4, n - 5],
                [25.0, -48.0, 36.0, -16.0, 3.0],
            ),
            _ => combo([i - 2, i - 1, i + 1, i + 2, i], [1.0, -8.0, 8.0, -1.0, 0.0]),
        })
        .collect()
}

fn hermite(step: f64, mats: &[Mat2], derivs: &[Mat2], tau: f64) -> (Mat2, Mat2) {
    let last = mats.len() - 2;
    let pos = (tau / step).max(0.0);
    let i = (pos.floor() as usize).min(last);
    let u = (pos - i as f64).clamp(0.0, 1.0);
    let (u2, u3) = (u * u, u * u * u);
    let value = mats[i].scale(2.0 * u3 - 3.0 * u2 + 1.0)
        + derivs[i].scale(step * (u3 - 2.0 * u2 + u))
        + mats[i + 1].scale(-2.0 * u3 + 3.0 * u2)
        + derivs[i + 1].scale(step * (u3 - u2));
    let slope = mats[i].scale((6.0 * u2 - 6.0 * u) / step)
        + derivs[i].scale(3.0 * u2 - 4.0 * u + 1.0)
        + mats[i + 1].scale((-6.0 * u2 + 6.0 * u) / step)
        + derivs[i + 1].scale(3.0 * u2 - 2.0 * u);
    let det = value.det();
    if det > 0.0 {
        (value.scale(1.0 / det.sqrt()), slope)
    } else {
        (value, slope)
    }
}

/// A located crossing with its crossing-form data.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Crossing {
    pub time: f64,
    pub kernel_dim: usize,
    /// `#positive - #negative` eigenvalues of the crossing form.
    pub signature: i32,
    /// Some eigenvalue of the crossing form is numerically zero.
    pub degenerate: bool,
    pub is_endpoint: bool,
}

/// Grid-then-bisection crossing search parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CrossingSearch {
    pub grid: usize,
    pub time_tol: f64,
    /// `|det(psi - 1)|` below this (times `max(1, |psi|^2)`) counts as zero.
    pub det_tol: f64,
    pub refinements: u32,
}

impl Default for CrossingSearch {
    fn default() -> Self {
        Self {
            grid: 10_000,
            time_tol: 1e-12,
            det_tol: 1e-12,
            refinements: 2,
        }
    }
}

struct Probe<'a> {
    path: &'a SymplecticPath,
    search: CrossingSearch,
}

#[derive(Clone, Copy)]
struct Candidate {
    time: f64,
    refined: bool,
    residual: f64,
}

impl Probe<'_> {
    /// `(det(psi - 1), d/ds det(psi - 1), zero tolerance)`.
    fn sample(&self, s: f64) -> (f64, f64, f64) {
        let (m, dm) = self.path.eval_with_derivative(s);
        let [[a, b], [c, d]] = m.0;
        let [[da, db], [dc, dd]] = dm.0;
        let f = (a - 1.0) * (d - 1.0) - b * c;
        let g = da * (d - 1.0) + (a - 1.0) * dd - db * c - b * dc;
        (f, g, self.search.det_tol * m.max_abs().powi(2).max(1.0))
    }

    fn det(&self, s: f64) -> f64 {
        self.sample(s).0
    }

    fn slope(&self, s: f64) -> f64 {
        self.sample(s).1
    }

    fn bisect(&self, f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
        let mut f_lo = f(lo);
        while hi - lo > self.search.time_tol {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let f_mid = f(mid);
            if f_mid == 0.0 {
                return mid;
            }
            if (f_mid < 0.0) == (f_lo < 0.0) {
                lo = mid;
                f_lo = f_mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    fn scan(
        &self,
        lo: f64,
        hi: f64,
        cells: usize,
        depth: u32,
        out: &mut Vec<Candidate>,
    ) -> Result<(), MaslovError> {
        let h = (hi - lo) / cells as f64;
        let nodes: Vec<(f64, f64, f64, f64)> = (0..=cells)
            .map(|i| {
                let s = if i == cells { hi } else { lo + h * i as f64 };
                let (f, g, tol) = self.sample(s);
                (s, f, g, tol)
            })
            .collect();
        for (i, pair) in nodes.windows(2).enumerate() {
            let (sa, fa, ga, tol_a) = pair[0];
            let (sb, fb, gb, tol_b) = pair[1];
            let za = fa.abs() <= tol_a;
            let zb = fb.abs() <= tol_b;
            if !za && !zb && (fa < 0.0) != (fb < 0.0) {
                let root = self.bisect(|s| self.det(s), sa, sb);
                out.push(self.candidate(root, true));
            }
            if (ga < 0.0) != (gb < 0.0) {
                let ext = self.bisect(|s| self.slope(s), sa, sb);
                let (f_ext, _, tol) = self.sample(ext);
                if f_ext.abs() <= tol {
                    out.push(self.candidate(ext, true));
                } else if !za && !zb && (fa < 0.0) == (fb < 0.0) && (f_ext < 0.0) != (fa < 0.0) {
                    // Two roots inside one cell.
                    if depth >= self.search.refinements {
                        return Err(MaslovError::Unresolved { time: ext });
                    }
                    self.scan(sa, sb, 10, depth + 1, out)?;
                }
            }
            if za && i > 0 {
                out.push(self.node_candidate(&nodes, i));
            }
        }
        Ok(())
    }

    fn candidate(&self, time: f64, refined: bool) -> Candidate {
        Candidate {
            time,
            refined,
            residual: self.det(time).abs(),
        }
    }

    /// A grid node where the determinant is already numerically zero.
    fn node_candidate(&self, nodes: &[(f64, f64, f64, f64)], i: usize) -> Candidate {
        let (s, ..) = nodes[i];
        if let (Some(prev), Some(next)) = (nodes.get(i - 1), nodes.get(i + 1)) {
            let (fp, fn_) = (prev.1, next.1);
            if fp.abs() > prev.3 && fn_.abs() > next.3 && (fp < 0.0) != (fn_ < 0.0) {
                return self.candidate(self.bisect(|s| self.det(s), prev.0, next.0), true);
            }
        }
        self.candidate(s, false)
    }
}

/// Locates all crossings with the default search.
pub fn find_crossings(path: &SymplecticPath) -> Result<Vec<Crossing>, MaslovError> {
    find_crossings_with(path, &CrossingSearch::default())
}

pub fn find_crossings_with(
    path: &SymplecticPath,
    search: &CrossingSearch,
) -> Result<Vec<Crossing>, MaslovError> {
    let probe = Probe {
        path,
        search: *search,
    };
    let total = path.duration;
    let h = total / search.grid.max(1) as f64;
    let mut raw = Vec::new();
    probe.scan(0.0, total, search.grid.max(1), 0, &mut raw)?;
    raw.sort_by(|a, b| a.time.total_cmp(&b.time));

    // Neighbouring candidates are one root when the determinant also vanishes
    // between them (touching zeros, flat degenerate zeros).
    let same_root = |a: f64, b: f64| {
        let (f, _, tol) = probe.sample(0.5 * (a + b));
        (b - a).abs() <= 1.01 * h && f.abs() <= tol
    };
    let mut times: Vec<f64> = Vec::new();
    let mut cluster: Option<(Candidate, f64)> = None;
    for cand in raw {
        match cluster {
            Some((best, last)) if same_root(last, cand.time) => {
                let better = (cand.refined && !best.refined)
                    || (cand.refined == best.refined && cand.residual < best.residual);
                cluster = Some((if better { cand } else { best }, cand.time));
            }
            _ => {
                if let Some((best, _)) = cluster {
                    times.push(best.time);
                }
                cluster = Some((cand, cand.time));
            }
        }
    }
    if let Some((best, _)) = cluster {
        times.push(best.time);
    }

    let at_start = {
        let (f, _, tol) = probe.sample(0.0);
        f.abs() <= tol
    };
    let at_end = {
        let (f, _, tol) = probe.sample(total);
        f.abs() <= tol
    };
    times.retain(|&t| {
        t > search.time_tol
            && t < total - search.time_tol
            && !(at_start && same_root(0.0, t))
            && !(at_end && same_root(t, total))
    });

    let scale = path.derivative_scale();
    let mut out = Vec::with_capacity(times.len() + 2);
    if at_start {
        out.push(classify(path, 0.0, true, scale));
    }
    out.extend(times.into_iter().map(|t| classify(path, t, false, scale)));
    if at_end {
        out.push(classify(path, total, true, scale));
    }
    Ok(out)
}

struct FormSignature {
    kernel_dim: usize,
    signature: i32,
    nullity: usize,
}

fn crossing_form_matrix(dm: &Mat2) -> [[f64; 2]; 2] {
    let [[b00, b01], [b10, b11]] = dm.0;
    let off = 0.5 * (b11 - b00);
    [[b10, off], [off, -b01]]
}

fn kernel(m: &Mat2) -> (usize, [f64; 2]) {
    let k = *m - Mat2::IDENTITY;
    if k.max_abs() <= KERNEL_TOL * m.max_abs().max(1.0) {
        return (2, [1.0, 0.0]);
    }
    let [r0, r1] = k.0;
    let row = if r0[0].hypot(r0[1]) >= r1[0].hypot(r1[1]) {
        r0
    } else {
        r1
    };
    let n = row[0].hypot(row[1]);
    (1, [-row[1] / n, row[0] / n])
}

fn form_signature(path: &SymplecticPath, s: f64, scale: f64) -> FormSignature {
    let (m, dm) = path.eval_with_derivative(s);
    let q = crossing_form_matrix(&dm);
    let (tr, det) = (q[0][0] + q[1][1], q[0][0] * q[1][1] - q[0][1] * q[1][0]);
    let disc = (0.25 * tr * tr - det).max(0.0).sqrt();
    let eig = [0.5 * tr - disc, 0.5 * tr + disc];
    let form_norm = eig[0].abs().max(eig[1].abs());
    let threshold = DEGENERACY_REL * form_norm.max(scale);
    let (kernel_dim, v) = kernel(&m);
    let values: &[f64] = if kernel_dim == 2 {
        &eig
    } else {
        &[q[0][0] * v[0] * v[0] + 2.0 * q[0][1] * v[0] * v[1] + q[1][1] * v[1] * v[1]]
    };
    let mut sig = 0;
    let mut nullity = 0;
    for &lambda in values {
        if lambda.abs() <= threshold {
            nullity += 1;
        } else if lambda > 0.0 {
            sig += 1;
        } else {
            sig -= 1;
        }
    }
    FormSignature {
        kernel_dim,
        signature: sig,
        nullity,
    }
}

fn classify(path: &SymplecticPath, time: f64, is_endpoint: bool, scale: f64) -> Crossing {
    let form = form_signature(path, time, scale);
    Crossing {
        time,
        kernel_dim: form.kernel_dim,
        signature: form.signature,
        degenerate: form.nullity > 0,
        is_endpoint,
    }
}

/// `w0(v, psi'(s) v)` for `v` in `ker(psi(s) - 1)`.
pub fn crossing_form(path: &SymplecticPath, s: f64, v: [f64; 2]) -> Result<f64, MaslovError> {
    let (m, dm) = path.eval_with_derivative(s);
    let r = (m - Mat2::IDENTITY).mul_vec(v);
    let residual = r[0].hypot(r[1]);
    if residual > KERNEL_TOL * v[0].hypot(v[1]) {
        return Err(MaslovError::NotInKernel { residual });
    }
    let w = dm.mul_vec(v);
    Ok(v[0] * w[1] - v[1] * w[0])
}

/// Signature of the crossing form at the crossing `s`.
pub fn crossing_signature(path: &SymplecticPath, s: f64) -> Result<i32, MaslovError> {
    let m = path.eval(s);
    let det = (m - Mat2::IDENTITY).det();
    if det.abs() > KERNEL_TOL * m.max_abs().powi(2).max(1.0) {
        return Err(MaslovError::NotACrossing(s));
    }
    let form = form_signature(path, s, path.derivative_scale());
    if form.nullity > 0 {
        return Err(MaslovError::DegenerateCrossing {
            time: s,
            signature: form.signature,
            nullity: form.nullity,
        });
    }
    Ok(form.signature)
}

/// Index together with the crossings it was computed from.
#[derive(Clone, Debug, PartialEq)]
pub struct MaslovIndex {
    pub index: HalfInteger,
    pub crossings: Vec<Crossing>,
    /// The path was perturbed (endpoints fixed) to remove degenerate crossings.
    pub perturbed: bool,
}

impl MaslovIndex {
    pub fn crossing_at_end(&self) -> bool {
        self.crossings
            .last()
            .is_some_and(|c| c.is_endpoint && c.time > 0.0)
    }
}

pub fn maslov_index(path: &SymplecticPath) -> Result<HalfInteger, MaslovError> {
    maslov_index_detailed(path).map(|m| m.index)
}

/// Robbin-Salamon index. Degenerate interior crossings are removed by an
/// endpoint-preserving perturbation; degenerate endpoint crossings are an
/// error.
pub fn maslov_index_detailed(path: &SymplecticPath) -> Result<MaslovIndex, MaslovError> {
    let crossings = find_crossings(path)?;
    if let Some(c) = crossings.iter().find(|c| c.degenerate && c.is_endpoint) {
        return Err(degenerate(c));
    }
    let bad: Vec<f64> = crossings
        .iter()
        .filter(|c| c.degenerate)
        .map(|c| c.time)
        .collect();
    if bad.is_empty() {
        return Ok(MaslovIndex {
            index: weighted_sum(&crossings),
            crossings,
            perturbed: false,
        });
    }
    let bumps = bumps_around(&bad, &crossings, path.duration);
    for eps in PERTURBATION_AMPLITUDES {
        let perturbed = SymplecticPath {
            kind: PathKind::Perturbed {
                base: Box::new(path.clone()),
                bumps: bumps.clone(),
                eps,
            },
            offset: 0.0,
            duration: path.duration,
        };
        let found = find_crossings(&perturbed)?;
        if found.iter().all(|c| !c.degenerate) {
            return Ok(MaslovIndex {
                index: weighted_sum(&found),
                crossings: found,
                perturbed: true,
            });
        }
    }
    let first = crossings.iter().find(|c| c.degenerate).copied();
    Err(first.map_or(MaslovError::NotACrossing(bad[0]), |c| degenerate(&c)))
}

fn degenerate(c: &Crossing) -> MaslovError {
    MaslovError::DegenerateCrossing {
        time: c.time,
        signature: c.signature,
        nullity: if c.kernel_dim == 2 && c.signature == 0 {
            2
        } else {
            1
        },
    }
}

fn weighted_sum(crossings: &[Crossing]) -> HalfInteger {
    crossings
        .iter()
        .map(|c| {
            let weight = if c.is_endpoint { 1 } else { 2 };
            HalfInteger::from_twice(weight * c.signature as i64)
        })
        .fold(HalfInteger::ZERO, Add::add)
}

/// One bump per degenerate crossing, placed so the crossing sits at the
/// steepest point (a quarter of the support) and the support stays clear of
/// the endpoints and of every other crossing.
fn bumps_around(bad: &[f64], all: &[Crossing], duration: f64) -> Vec<Bump> {
    bad.iter()
        .map(|&t| {
            let clearance = all
                .iter()
                .map(|c| c.time)
                .filter(|&o| o != t)
                .chain([0.0, duration])
                .map(|o| (o - t).abs())
                .filter(|d| *d > 0.0)
                .fold(f64::INFINITY, f64::min);
            let d = clearance / 8.0;
            Bump {
                start: t - d,
                end: t + 3.0 * d,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rotation(duration: f64) -> SymplecticPath {
        SymplecticPath::from_generator(Mat2::J, duration).unwrap()
    }

    fn t0_generator(t0: f64) -> Mat2 {
        Mat2::new(0.0, -1.0 / t0.powi(4), 1.0 / t0.powi(2), 0.0)
    }

    #[test]
    fn half_integer_display() {
        assert_eq!(alloc::format!("{}", HalfInteger::from_twice(6)), "3");
        assert_eq!(alloc::format!("{}", HalfInteger::from_twice(5)), "5/2");
        assert_eq!(HalfInteger::from_twice(-3).to_integer(), None);
        assert_eq!(
            HalfInteger::from_integer(2) + HalfInteger::from_twice(1),
            HalfInteger::from_twice(5)
        );
    }

    #[test]
    fn full_rotation_crossings() {
        let c = find_crossings(&rotation(2.0 * PI)).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].time, 0.0);
        assert!((c[1].time - 2.0 * PI).abs() < 1e-12);
        assert!(c
            .iter()
            .all(|x| x.kernel_dim == 2 && x.is_endpoint && x.signature == 2));
    }

    #[test]
    fn half_rotation_has_only_start_crossing() {
        let c = find_crossings(&rotation(PI)).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].time, 0.0);
    }

    #[test]
    fn circular_block_crossings() {
        let t0: f64 = 0.5;
        let period = 2.0 * PI * t0.powi(3);
        let path = SymplecticPath::from_generator(t0_generator(t0), 1.5 * period).unwrap();
        let c = find_crossings(&path).unwrap();
        assert_eq!(c.len(), 2);
        assert!((c[1].time - PI / 4.0).abs() < 1e-10);
        assert!(!c[1].is_endpoint && c[1].signature == 2);
    }

    #[test]
    fn crossing_form_examples() {
        let t0: f64 = 0.5;
        let path = SymplecticPath::from_generator(t0_generator(t0), 1.0).unwrap();
        assert!((crossing_form(&path, 0.0, [1.0, 0.0]).unwrap() - 4.0).abs() < 1e-14);
        assert!((crossing_form(&path, 0.0, [0.0, 1.0]).unwrap() - 16.0).abs() < 1e-14);
        let cw = SymplecticPath::from_generator(-Mat2::J, 1.0).unwrap();
        assert_eq!(crossing_form(&cw, 0.0, [1.0, 0.0]).unwrap(), -1.0);
        assert!(matches!(
            crossing_form(&path, 0.1, [1.0, 0.0]),
            Err(MaslovError::NotInKernel { .. })
        ));
    }

    #[test]
    fn signature_examples() {
        let path = SymplecticPath::from_generator(t0_generator(0.5), 1.0).unwrap();
        assert_eq!(crossing_signature(&path, 0.0).unwrap(), 2);
        assert_eq!(crossing_signature(&path, PI / 4.0).unwrap(), 2);
        let cw = SymplecticPath::from_generator(-Mat2::J, 1.0).unwrap();
        assert_eq!(crossing_signature(&cw, 0.0).unwrap(), -2);
        assert!(matches!(
            crossing_signature(&path, 0.3),
            Err(MaslovError::NotACrossing(_))
        ));
    }

    #[test]
    fn shear_crossing_is_degenerate() {
        // Q(v) = -v2^2 on the two-dimensional kernel at s = 0.
        let shear = SymplecticPath::from_generator(Mat2::new(0.0, 1.0, 0.0, 0.0), 1.0).unwrap();
        assert_eq!(
            crossing_signature(&shear, 0.0),
            Err(MaslovError::DegenerateCrossing {
                time: 0.0,
                signature: -1,
                nullity: 1
            })
        );
    }

    #[test]
    fn rotation_indices() {
        assert_eq!(
            maslov_index(&rotation(2.0 * PI)).unwrap(),
            HalfInteger::from_integer(2)
        );
        assert_eq!(
            maslov_index(&rotation(0.9 * 2.0 * PI)).unwrap(),
            HalfInteger::from_integer(1)
        );
        assert_eq!(
            maslov_index(&rotation(2.5 * 2.0 * PI)).unwrap(),
            HalfInteger::from_integer(5)
        );
        let cw = SymplecticPath::from_generator(-Mat2::J, 2.5 * 2.0 * PI).unwrap();
        assert_eq!(maslov_index(&cw).unwrap(), HalfInteger::from_integer(-5));
    }

    #[test]
    fn hyperbolic_path_has_single_start_crossing() {
        let h = SymplecticPath::from_generator(Mat2::new(1.0, 0.0, 0.0, -1.0), 2.0).unwrap();
        let c = find_crossings(&h).unwrap();
        assert_eq!(c.len(), 1);
        assert!(c[0].is_endpoint);
        // Q(v) = -2 v1 v2 on all of R^2: eigenvalues +1 and -1.
        assert_eq!(c[0].signature, 0);
        assert!(!c[0].degenerate);
    }

    #[test]
    fn non_traceless_generator_rejected() {
        assert!(matches!(
            SymplecticPath::from_generator(Mat2::IDENTITY, 1.0),
            Err(MaslovError::NotHamiltonian(_))
        ));
        assert!(SymplecticPath::from_generator(Mat2::J, 0.0).is_err());
        assert!(SymplecticPath::from_generator(Mat2::J, f64::NAN).is_err());
    }
}
