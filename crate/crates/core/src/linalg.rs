//! Fixed-size dense linear algebra used by the flow and convexity modules.

use core::f64::consts::PI;
use core::ops::{Add, Mul, Neg, Sub};

// Unused when std is linked and the inherent f64 methods take over.
#[allow(unused_imports)]
use num_traits::Float;

pub type Vec4 = [f64; 4];
pub type Mat4 = [[f64; 4]; 4];
pub type Mat3 = [[f64; 3]; 3];

/// A real 2x2 matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2(pub [[f64; 2]; 2]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([[1.0, 0.0], [0.0, 1.0]]);
    pub const ZERO: Mat2 = Mat2([[0.0, 0.0], [0.0, 0.0]]);
    /// Counterclockwise quarter turn.
    pub const J: Mat2 = Mat2([[0.0, -1.0], [1.0, 0.0]]);

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn det(&self) -> f64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn trace(&self) -> f64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn scale(&self, s: f64) -> Mat2 {
        let m = &self.0;
        Mat2([[s * m[0][0], s * m[0][1]], [s * m[1][0], s * m[1][1]]])
    }

    pub fn mul_vec(&self, v: [f64; 2]) -> [f64; 2] {
        let m = &self.0;
        [
            m[0][0] * v[0] + m[0][1] * v[1],
            m[1][0] * v[0] + m[1][1] * v[1],
        ]
    }

    pub fn transpose(&self) -> Mat2 {
        let m = &self.0;
        Mat2([[m[0][0], m[1][0]], [m[0][1], m[1][1]]])
    }

    /// Entrywise max-norm.
    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flat_map(|row| row.iter())
            .fold(0.0, |acc: f64, x| acc.max(x.abs()))
    }

    pub fn inverse(&self) -> Option<Mat2> {
        let d = self.det();
        if d == 0.0 || !d.is_finite() {
            return None;
        }
        let m = &self.0;
        Some(Mat2([[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]]).scale(1.0 / d))
    }

    /// `exp(s A)` for a traceless `A`, using `A^2 = -det(A) 1`.
    pub fn exp_traceless(&self, s: f64) -> Mat2 {
        let det = self.det();
        let (even, odd) = if det > 0.0 {
            let w = det.sqrt();
            let phase = w * s;
            (phase.cos(), sinc_scaled(phase, w, s, Float::sin))
        } else if det < 0.0 {
            let w = (-det).sqrt();
            let phase = w * s;
            (phase.cosh(), sinc_scaled(phase, w, s, Float::sinh))
        } else {
            (1.0, s)
        };
        Mat2::IDENTITY.scale(even) + self.scale(odd)
    }
}

/// `f(w s) / w`, falling back to its Taylor series when `w s` is tiny.
fn sinc_scaled(phase: f64, w: f64, s: f64, f: fn(f64) -> f64) -> f64 {
    if phase.abs() < 1e-6 {
        s
    } else {
        f(phase) / w
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        let (a, b) = (self.0, o.0);
        Mat2([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        self + (-o)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale(-1.0)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        let (a, b) = (self.0, o.0);
        let mut out = [[0.0; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Mat2(out)
    }
}

pub fn dot4(a: &Vec4, b: &Vec4) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm4(a: &Vec4) -> f64 {
    dot4(a, a).sqrt()
}

pub fn mat4_mul_vec(m: &Mat4, v: &Vec4) -> Vec4 {
    let mut out = [0.0; 4];
    for (o, row) in out.iter_mut().zip(m) {
        *o = dot4(row, v);
    }
    out
}

/// Gaussian elimination with partial pivoting. `None` for a singular system.
pub fn solve3(a: Mat3, b: [f64; 3]) -> Option<[f64; 3]> {
    let mut m = [[0.0; 4]; 3];
    for i in 0..3 {
        m[i][..3].copy_from_slice(&a[i]);
        m[i][3] = b[i];
    }
    let scale = a
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0_f64, |acc, x| acc.max(x.abs()));
    if scale == 0.0 {
        return None;
    }
    for col in 0..3 {
        let pivot = (col..3)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .unwrap_or(col);
        if m[pivot][col].abs() <= 1e-14 * scale {
            return None;
        }
        m.swap(col, pivot);
        for row in col + 1..3 {
            let f = m[row][col] / m[col][col];
            for k in col..4 {
                m[row][k] -= f * m[col][k];
            }
        }
    }
    let mut x = [0.0; 3];
    for i in (0..3).rev() {
        let tail: f64 = (i + 1..3).map(|k| m[i][k] * x[k]).sum();
        x[i] = (m[i][3] - tail) / m[i][i];
    }
    Some(x)
}

/// Eigenvalues of a symmetric 3x3 matrix in ascending order (trigonometric
/// closed form).
pub fn sym3_eigenvalues(m: &Mat3) -> [f64; 3] {
    let p1 = m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2];
    let q = (m[0][0] + m[1][1] + m[2][2]) / 3.0;
    if p1 == 0.0 {
        let mut d = [m[0][0], m[1][1], m[2][2]];
        d.sort_by(f64::total_cmp);
        return d;
    }
    let p2 = (m[0][0] - q).powi(2) + (m[1][1] - q).powi(2) + (m[2][2] - q).powi(2) + 2.0 * p1;
    let p = (p2 / 6.0).sqrt();
    let mut b = *m;
    for (i, row) in b.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = (*x - if i == j { q } else { 0.0 }) / p;
        }
    }
    let r = (det3(&b) / 2.0).clamp(-1.0, 1.0);
    let phi = r.acos() / 3.0;
    let hi = q + 2.0 * p * phi.cos();
    let lo = q + 2.0 * p * (phi + 2.0 * PI / 3.0).cos();
    let mid = 3.0 * q - hi - lo;
    [lo, mid, hi]
}

pub fn det3(m: &Mat3) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn mat3_mul_vec(m: &Mat3, v: &[f64; 3]) -> [f64; 3] {
    [
        m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
        m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
        m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
    ]
}

fn cross3(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn normalize3(v: [f64; 3]) -> Option<[f64; 3]> {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    (n > 0.0 && n.is_finite()).then(|| [v[0] / n, v[1] / n, v[2] / n])
}

/// Smallest eigenpair of a symmetric 3x3 matrix.
///
/// The closed-form eigenvalue seeds an eigenvector taken from the widest cross
/// product of the rows of `m - lambda 1`; one inverse-iteration step and a
/// Rayleigh quotient then polish both.
pub fn sym3_min_eigenpair(m: &Mat3) -> (f64, [f64; 3]) {
    let evals = sym3_eigenvalues(m);
    let lambda = evals[0];
    let mut shifted = *m;
    for (i, row) in shifted.iter_mut().enumerate() {
        row[i] -= lambda;
    }
    let candidates = [
        cross3(&shifted[0], &shifted[1]),
        cross3(&shifted[0], &shifted[2]),
        cross3(&shifted[1], &shifted[2]),
    ];
    let best = candidates
        .iter()
        .copied()
        .max_by(|a, b| {
            let na = a[0] * a[0] + a[1] * a[1] + a[2] * a[2];
            let nb = b[0] * b[0] + b[1] * b[1] + b[2] * b[2];
            na.total_cmp(&nb)
        })
        .unwrap_or([1.0, 0.0, 0.0]);
    let mut vec = match normalize3(best) {
        Some(v) => v,
        // lambda has multiplicity >= 2: any vector orthogonal to the top
        // eigenvector works; fall back to a Rayleigh-minimizing axis.
        None => degenerate_min_vector(m, &evals),
    };
    // One inverse-iteration step with a slightly perturbed shift.
    let spread = (evals[2] - evals[0]).abs().max(1e-300);
    let mut inv = *m;
    for (i, row) in inv.iter_mut().enumerate() {
        row[i] -= lambda - 1e-9 * spread;
    }
    if let Some(next) = solve3(inv, vec).and_then(normalize3) {
        vec = next;
    }
    let mv = mat3_mul_vec(m, &vec);
    let rayleigh = vec[0] * mv[0] + vec[1] * mv[1] + vec[2] * mv[2];
    (rayleigh, vec)
}

fn degenerate_min_vector(m: &Mat3, evals: &[f64; 3]) -> [f64; 3] {
    if (evals[2] - evals[0]).abs() <= 1e-14 * evals[2].abs().max(1.0) {
        return [1.0, 0.0, 0.0];
    }
    let mut shifted = *m;
    for (i, row) in shifted.iter_mut().enumerate() {
        row[i] -= evals[2];
    }
    // Rows of m - lambda_max span the low eigenspace.
    shifted
        .iter()
        .copied()
        .filter_map(normalize3)
        .next()
        .unwrap_or([1.0, 0.0, 0.0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn traceless_exponential_matches_rotation() {
        let m = Mat2::J.exp_traceless(PI / 2.0);
        assert!((m - Mat2::J).max_abs() < 1e-15);
        let h = Mat2::new(1.0, 0.0, 0.0, -1.0).exp_traceless(2.0);
        assert!((h.0[0][0] - 2.0_f64.exp()).abs() < 1e-12);
        assert!((h.0[1][1] - (-2.0_f64).exp()).abs() < 1e-15);
        let shear = Mat2::new(0.0, 1.0, 0.0, 0.0).exp_traceless(3.0);
        assert_eq!(shear, Mat2::new(1.0, 3.0, 0.0, 1.0));
    }

    #[test]
    fn solve3_recovers_solution() {
        let a = [[2.0, 1.0, 0.0], [1.0, 3.0, 1.0], [0.0, 1.0, 4.0]];
        let x = solve3(a, [3.0, 5.0, 5.0]).unwrap();
        for (xi, e) in x.iter().zip([1.0, 1.0, 1.0]) {
            assert!((xi - e).abs() < 1e-14);
        }
        assert!(solve3(
            [[1.0, 2.0, 3.0], [2.0, 4.0, 6.0], [0.0, 0.0, 1.0]],
            [1.0; 3]
        )
        .is_none());
    }

    #[test]
    fn sym3_diagonal_and_repeated() {
        let d = [[3.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 2.0]];
        assert_eq!(sym3_eigenvalues(&d), [-1.0, 2.0, 3.0]);
        let (l, v) = sym3_min_eigenpair(&d);
        assert!((l + 1.0).abs() < 1e-14);
        assert!((v[1].abs() - 1.0).abs() < 1e-12);
        // eigenvalues {1, 1, 4}
        let r = [[2.0, 1.0, 1.0], [1.0, 2.0, 1.0], [1.0, 1.0, 2.0]];
        let e = sym3_eigenvalues(&r);
        assert!((e[0] - 1.0).abs() < 1e-14 && (e[1] - 1.0).abs() < 1e-14);
        assert!((e[2] - 4.0).abs() < 1e-14);
        let (l, v) = sym3_min_eigenpair(&r);
        assert!((l - 1.0).abs() < 1e-13);
        assert!((v[0] + v[1] + v[2]).abs() < 1e-7);
    }
}
