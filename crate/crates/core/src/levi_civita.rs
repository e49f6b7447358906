//! The regularized Hamiltonian in Levi-Civita coordinates and its convexity.
//!
//! With `q = 2 v^2` and `p = u / conj(v)` (complex notation) the level
//! `H = -c` of the rotating Kepler problem becomes the zero set of the quartic
//!
//! ```text
//! K_c(u, v) = |u|^2/2 + c |v|^2 + 2 |v|^2 <u, iv> - 1/2
//! ```
//!
//! where `<., .>` is the real inner product on the plane and `i` the
//! counterclockwise quarter turn. A negative eigenvalue of the Hessian of
//! `K_c` restricted to the tangent space of `{K_c = 0}` shows that the
//! compact component is not convex.

use alloc::vec::Vec;
use core::fmt;

// Unused when std is linked and the inherent f64 methods take over.
#[allow(unused_imports)]
use num_traits::Float;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::ConvexityError;
use crate::linalg::{sym3_min_eigenpair, Mat3, Mat4, Vec4};

/// Supported Jacobi range for sampling: `(C_MIN, C_MAX]`.
pub const C_MIN: f64 = 1.4;
pub const C_MAX: f64 = 100.0;
/// Largest ray parameter searched for the compact component.
pub const RAY_BRACKET: f64 = 10.0;
/// `|DK_c|` below this counts as a critical point.
pub const GRADIENT_TOL: f64 = 1e-10;

/// A point `(u, v)` of `C^2 = R^4`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct LcPoint {
    pub u: [f64; 2],
    pub v: [f64; 2],
}

impl LcPoint {
    pub const fn new(u: [f64; 2], v: [f64; 2]) -> Self {
        Self { u, v }
    }

    /// Components as `(u1, u2, v1, v2)`.
    pub fn to_array(self) -> Vec4 {
        [self.u[0], self.u[1], self.v[0], self.v[1]]
    }

    pub fn from_array(a: Vec4) -> Self {
        Self::new([a[0], a[1]], [a[2], a[3]])
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(
            [s * self.u[0], s * self.u[1]],
            [s * self.v[0], s * self.v[1]],
        )
    }
}

fn dot(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

/// Multiplication by `i`.
fn rot(a: [f64; 2]) -> [f64; 2] {
    [-a[1], a[0]]
}

pub fn lc_energy(p: &LcPoint, c: f64) -> f64 {
    let v2 = dot(p.v, p.v);
    0.5 * dot(p.u, p.u) + c * v2 + 2.0 * v2 * dot(p.u, rot(p.v)) - 0.5
}

/// `DK_c` as a coefficient vector in the order `(u1, u2, v1, v2)`.
pub fn lc_gradient(p: &LcPoint, c: f64) -> Vec4 {
    let v2 = dot(p.v, p.v);
    let g = dot(p.u, rot(p.v));
    let iv = rot(p.v);
    let iu = rot(p.u);
    [
        p.u[0] + 2.0 * v2 * iv[0],
        p.u[1] + 2.0 * v2 * iv[1],
        2.0 * c * p.v[0] + 4.0 * g * p.v[0] - 2.0 * v2 * iu[0],
        2.0 * c * p.v[1] + 4.0 * g * p.v[1] - 2.0 * v2 * iu[1],
    ]
}

/// Symmetric Hessian of `K_c`, same ordering as [`lc_gradient`].
pub fn lc_hessian(p: &LcPoint, c: f64) -> Mat4 {
    let v2 = dot(p.v, p.v);
    let g = dot(p.u, rot(p.v));
    let iv = rot(p.v);
    let w = rot(p.u).map(|x| -x);
    let mut h = [[0.0; 4]; 4];
    h[0][0] = 1.0;
    h[1][1] = 1.0;
    // d^2 K / du dv = 4 (iv) v^T + 2 |v|^2 J
    let j = [[0.0, -1.0], [1.0, 0.0]];
    for a in 0..2 {
        for b in 0..2 {
            let cross = 4.0 * iv[a] * p.v[b] + 2.0 * v2 * j[a][b];
            h[a][2 + b] = cross;
            h[2 + b][a] = cross;
            let diag = if a == b { 2.0 * c + 4.0 * g } else { 0.0 };
            h[2 + a][2 + b] = diag + 4.0 * (p.v[a] * w[b] + w[a] * p.v[b]);
        }
    }
    h
}

/// `DK_c(u, v)(du, dv)`, written out term by term.
pub fn gradient_form(p: &LcPoint, c: f64, d: &LcPoint) -> f64 {
    let v2 = dot(p.v, p.v);
    dot(p.u, d.u)
        + 2.0 * c * dot(p.v, d.v)
        + 4.0 * dot(p.v, d.v) * dot(p.u, rot(p.v))
        + 2.0 * v2 * dot(d.u, rot(p.v))
        + 2.0 * v2 * dot(p.u, rot(d.v))
}

/// `D^2 K_c(u, v)((du, dv), (du, dv))`, written out term by term.
pub fn hessian_form(p: &LcPoint, c: f64, d: &LcPoint) -> f64 {
    let v2 = dot(p.v, p.v);
    let vd = dot(p.v, d.v);
    dot(d.u, d.u)
        + 2.0 * c * dot(d.v, d.v)
        + 4.0 * dot(p.u, rot(p.v)) * dot(d.v, d.v)
        + 8.0 * vd * dot(p.u, rot(d.v))
        + 8.0 * vd * dot(d.u, rot(p.v))
        + 4.0 * v2 * dot(d.u, rot(d.v))
}

fn quadratic(m: &Mat4, x: &Vec4) -> f64 {
    (0..4)
        .map(|i| x[i] * (0..4).map(|j| m[i][j] * x[j]).sum::<f64>())
        .sum()
}

/// The explicit non-convexity witness on `{K_{3/2} = 0}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Witness {
    pub point: LcPoint,
    /// Tangent direction `(du, dv)`.
    pub direction: LcPoint,
    /// `D^2 K_{3/2}` on the direction; `(3/2)(11/5 - sqrt 5) < 0`.
    pub value: f64,
}

pub const WITNESS_JACOBI: f64 = 1.5;
const WITNESS_TOL: f64 = 1e-14;

/// Point `((0, -a), (1/2, 0))` with `a = (1 + sqrt 5)/4` and tangent direction
/// `((0, 6(1-a)/(4a-1)), (1, 0))`. All three checks go through
/// [`lc_energy`], [`lc_gradient`] and [`lc_hessian`].
pub fn convexity_witness() -> Result<Witness, ConvexityError> {
    let c = WITNESS_JACOBI;
    let a = (1.0 + 5.0f64.sqrt()) / 4.0;
    let point = LcPoint::new([0.0, -a], [0.5, 0.0]);
    let direction = LcPoint::new([0.0, 6.0 * (1.0 - a) / (4.0 * a - 1.0)], [1.0, 0.0]);
    if lc_energy(&point, c).abs() > WITNESS_TOL {
        return Err(ConvexityError::WitnessFailed("point is not on K = 0"));
    }
    let grad = lc_gradient(&point, c);
    let d = direction.to_array();
    let slope: f64 = (0..4).map(|i| grad[i] * d[i]).sum();
    if slope.abs() > WITNESS_TOL {
        return Err(ConvexityError::WitnessFailed("direction is not tangent"));
    }
    let value = quadratic(&lc_hessian(&point, c), &d);
    if !(value < 0.0) {
        return Err(ConvexityError::WitnessFailed(
            "Hessian value is not negative",
        ));
    }
    Ok(Witness {
        point,
        direction,
        value,
    })
}

fn check_range(c: f64, n: usize) -> Result<(), ConvexityError> {
    if !(c > C_MIN && c <= C_MAX) {
        return Err(ConvexityError::OutOfRange(c));
    }
    if n == 0 {
        return Err(ConvexityError::NoSamples);
    }
    Ok(())
}

/// First zero of `K_c` along `rho -> rho * dir` for a unit `dir`.
///
/// Along the ray `K_c = alpha rho^2 + beta rho^4 - 1/2`. When `beta < 0` the
/// ray may turn back before reaching zero, which is a miss.
pub fn ray_hit(dir: &LcPoint, c: f64) -> Result<f64, ConvexityError> {
    let alpha = 0.5 * dot(dir.u, dir.u) + c * dot(dir.v, dir.v);
    let beta = 2.0 * dot(dir.v, dir.v) * dot(dir.u, rot(dir.v));
    let k = |rho: f64| {
        let r2 = rho * rho;
        (alpha + beta * r2) * r2 - 0.5
    };
    let mut hi = RAY_BRACKET;
    if beta < 0.0 {
        hi = hi.min((-alpha / (2.0 * beta)).sqrt());
    }
    if !(k(hi) > 0.0) {
        return Err(ConvexityError::RayMiss);
    }
    let mut lo = 0.0;
    while hi - lo > 1e-12 * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        if k(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let rho = 0.5 * (lo + hi);
    // One Newton step brings the residual to rounding level.
    let slope = 2.0 * alpha * rho + 4.0 * beta * rho * rho * rho;
    Ok(if slope > 0.0 {
        rho - k(rho) / slope
    } else {
        rho
    })
}

/// Points on the compact component of `{K_c = 0}`.
#[derive(Clone, Debug, PartialEq)]
pub struct HypersurfaceSample {
    pub points: Vec<LcPoint>,
    /// Directions redrawn because their ray missed the compact component.
    pub ray_misses: usize,
}

/// Draws `n` uniformly distributed directions on the unit 3-sphere
/// (deterministically from `seed`) and projects each radially onto
/// `{K_c = 0}`.
pub fn sample_hypersurface(
    c: f64,
    n: usize,
    seed: u64,
) -> Result<HypersurfaceSample, ConvexityError> {
    check_range(c, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_misses = 100 * n + 1000;
    let mut points = Vec::with_capacity(n);
    let mut ray_misses = 0;
    while points.len() < n {
        let raw: Vec4 = core::array::from_fn(|_| StandardNormal.sample(&mut rng));
        let norm = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(norm > 1e-12) {
            continue;
        }
        let dir = LcPoint::from_array(raw.map(|x| x / norm));
        match ray_hit(&dir, c) {
            Ok(rho) => points.push(dir.scale(rho)),
            Err(_) => {
                ray_misses += 1;
                if ray_misses > max_misses {
                    return Err(ConvexityError::SamplingExhausted(ray_misses));
                }
            }
        }
    }
    Ok(HypersurfaceSample { points, ray_misses })
}

/// Orthonormal basis of the complement of the unit vector `e`, from the
/// Householder reflection that maps `e` to a coordinate axis.
fn complement_basis(e: &Vec4) -> [Vec4; 3] {
    let k = (0..4)
        .max_by(|&i, &j| e[i].abs().total_cmp(&e[j].abs()))
        .unwrap_or(0);
    let mut w = *e;
    w[k] += e[k].signum();
    let ww: f64 = w.iter().map(|x| x * x).sum();
    let column = |j: usize| -> Vec4 {
        core::array::from_fn(|i| f64::from(u8::from(i == j)) - 2.0 * w[i] * w[j] / ww)
    };
    let mut out = [[0.0; 4]; 3];
    for (slot, j) in (0..4).filter(|&j| j != k).enumerate() {
        out[slot] = column(j);
    }
    out
}

/// Smallest eigenvalue of the Hessian restricted to `ker DK_c` at `p`, with a
/// unit tangent eigenvector.
pub fn tangential_min_eigen(p: &LcPoint, c: f64) -> Result<(f64, Vec4), ConvexityError> {
    let grad = lc_gradient(p, c);
    let norm = grad.iter().map(|x| x * x).sum::<f64>().sqrt();
    if !(norm >= GRADIENT_TOL) {
        return Err(ConvexityError::GradientVanishes(norm));
    }
    let basis = complement_basis(&grad.map(|x| x / norm));
    let h = lc_hessian(p, c);
    let hb: [Vec4; 3] =
        basis.map(|b| core::array::from_fn(|i| (0..4).map(|j| h[i][j] * b[j]).sum()));
    let mut restricted: Mat3 = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            restricted[i][j] = (0..4).map(|k| basis[i][k] * hb[j][k]).sum();
        }
    }
    let (lambda, y) = sym3_min_eigenpair(&restricted);
    let dir: Vec4 = core::array::from_fn(|k| (0..3).map(|i| y[i] * basis[i][k]).sum());
    let n = dir.iter().map(|x| x * x).sum::<f64>().sqrt();
    Ok((lambda, dir.map(|x| x / n)))
}

/// Outcome of a scan: a negative value is a certificate of non-convexity; a
/// non-negative one only means none was found.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    NotConvex,
    NoCounterexampleFound,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::NotConvex => "not convex (negative tangential Hessian eigenvalue found)",
            Verdict::NoCounterexampleFound => "no counterexample found",
        })
    }
}

/// Minimum tangential Hessian eigenvalue over a set of sample points.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexityReport {
    pub c: f64,
    /// Points evaluated, including injected ones.
    pub samples: usize,
    pub ray_misses: usize,
    /// Samples skipped because `DK_c` vanished there.
    pub gradient_failures: usize,
    pub negative_count: usize,
    pub min_eigenvalue: f64,
    pub argmin_index: usize,
    pub argmin_point: LcPoint,
    pub argmin_direction: Vec4,
}

impl ConvexityReport {
    pub fn verdict(&self) -> Verdict {
        if self.min_eigenvalue < 0.0 {
            Verdict::NotConvex
        } else {
            Verdict::NoCounterexampleFound
        }
    }

    /// Combines per-point results, in order, into a report. The minimum is
    /// taken over the whole list with ties broken by index, so the result does
    /// not depend on how the evaluations were scheduled.
    pub fn from_evaluations(
        c: f64,
        points: &[LcPoint],
        evaluations: &[Result<(f64, Vec4), ConvexityError>],
        ray_misses: usize,
    ) -> Result<Self, ConvexityError> {
        let mut best: Option<(usize, f64, Vec4)> = None;
        let mut gradient_failures = 0;
        let mut negative_count = 0;
        for (i, eval) in evaluations.iter().enumerate() {
            match eval {
                Ok((lambda, dir)) => {
                    if *lambda < 0.0 {
                        negative_count += 1;
                    }
                    if best.as_ref().is_none_or(|(_, b, _)| lambda < b) {
                        best = Some((i, *lambda, *dir));
                    }
                }
                Err(ConvexityError::GradientVanishes(_)) => gradient_failures += 1,
                Err(e) => return Err(e.clone()),
            }
        }
        let (argmin_index, min_eigenvalue, argmin_direction) =
            best.ok_or(ConvexityError::NoSamples)?;
        Ok(Self {
            c,
            samples: evaluations.len(),
            ray_misses,
            gradient_failures,
            negative_count,
            min_eigenvalue,
            argmin_index,
            argmin_point: points[argmin_index],
            argmin_direction,
        })
    }
}

pub fn convexity_scan(c: f64, n: usize, seed: u64) -> Result<ConvexityReport, ConvexityError> {
    convexity_scan_with(c, n, seed, &[])
}

/// Scan of `n` random samples followed by the `extra` points (which should
/// lie on `{K_c = 0}`, e.g. the analytic witness).
pub fn convexity_scan_with(
    c: f64,
    n: usize,
    seed: u64,
    extra: &[LcPoint],
) -> Result<ConvexityReport, ConvexityError> {
    let sample = sample_hypersurface(c, n, seed)?;
    let mut points = sample.points;
    points.extend_from_slice(extra);
    let evals: Vec<_> = points.iter().map(|p| tangential_min_eigen(p, c)).collect();
    ConvexityReport::from_evaluations(c, &points, &evals, sample.ray_misses)
}
