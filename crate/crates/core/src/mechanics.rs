//! Kepler problem in inertial and rotating frames.
//!
//! Conventions: `E = |p|^2/2 - 1/|q|`, `L = q1 p2 - q2 p1`, rotating-frame
//! Hamiltonian `H = E + L`, Jacobi parameter `c = -H`. Polar coordinates
//! `(x, y, r, t)` are radius, angle, radial momentum and angular momentum;
//! tangent vectors in polar coordinates are stored in the order
//! `(r, t, x, y)`, matching the linearized flow.

use core::f64::consts::PI;

// Unused when std is linked and the inherent f64 methods take over.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::MechanicsError;
use crate::linalg::Vec4;

/// Smallest admissible `|q|`; anything closer to the origin is a collision.
pub const COLLISION_RADIUS: f64 = 1e-13;

/// Critical Jacobi parameter: the maximum of `-U` is attained at `|q| = 1`.
pub const CRITICAL_JACOBI: f64 = 1.5;

const ECCENTRICITY_CLAMP: f64 = 1e-12;
const HILL_ROOT_TOL: f64 = 1e-12;

/// Component indices of a polar tangent vector.
pub const R: usize = 0;
pub const T: usize = 1;
pub const X: usize = 2;
pub const Y: usize = 3;

/// Phase-space point in Cartesian position/momentum coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CartesianState {
    q: [f64; 2],
    p: [f64; 2],
}

impl CartesianState {
    pub fn new(q: [f64; 2], p: [f64; 2]) -> Result<Self, MechanicsError> {
        let radius = q[0].hypot(q[1]);
        if !(radius >= COLLISION_RADIUS) || !radius.is_finite() {
            return Err(MechanicsError::Collision { radius });
        }
        Ok(Self { q, p })
    }

    pub fn q(&self) -> [f64; 2] {
        self.q
    }

    pub fn p(&self) -> [f64; 2] {
        self.p
    }

    pub fn radius(&self) -> f64 {
        self.q[0].hypot(self.q[1])
    }
}

/// Phase-space point in polar coordinates. The angle `y` is kept unreduced so
/// windings stay recoverable.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolarState {
    pub x: f64,
    pub y: f64,
    pub r: f64,
    pub t: f64,
}

impl PolarState {
    pub fn new(x: f64, y: f64, r: f64, t: f64) -> Result<Self, MechanicsError> {
        if !(x >= COLLISION_RADIUS) || !x.is_finite() {
            return Err(MechanicsError::Collision { radius: x });
        }
        Ok(Self { x, y, r, t })
    }

    /// Angle reduced to `[0, 2pi)`, for display.
    pub fn reduced_angle(&self) -> f64 {
        let m = self.y % (2.0 * PI);
        if m < 0.0 {
            m + 2.0 * PI
        } else {
            m
        }
    }

    pub fn kepler_energy(&self) -> f64 {
        0.5 * (self.r * self.r + self.t * self.t / (self.x * self.x)) - 1.0 / self.x
    }

    /// `H_a = E + a L`.
    pub fn hamiltonian(&self, a: f64) -> f64 {
        self.kepler_energy() + a * self.t
    }
}

/// Kepler energy, angular momentum and Jacobi parameter of one state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnergyTriple {
    pub kepler_energy: f64,
    pub angular_momentum: f64,
    pub jacobi: f64,
}

impl EnergyTriple {
    pub fn new(kepler_energy: f64, angular_momentum: f64) -> Self {
        Self {
            kepler_energy,
            angular_momentum,
            jacobi: -kepler_energy - angular_momentum,
        }
    }

    pub fn of(state: &CartesianState) -> Self {
        Self::new(kepler_energy(state), angular_momentum(state))
    }

    pub fn hamiltonian(&self) -> f64 {
        -self.jacobi
    }
}

pub fn kepler_energy(s: &CartesianState) -> f64 {
    let [p1, p2] = s.p;
    0.5 * (p1 * p1 + p2 * p2) - 1.0 / s.radius()
}

pub fn angular_momentum(s: &CartesianState) -> f64 {
    s.q[0] * s.p[1] - s.q[1] * s.p[0]
}

/// `sqrt(2 E L^2 + 1)`; tiny negatives from rounding are clamped to zero.
pub fn eccentricity(kepler_energy: f64, angular_momentum: f64) -> Result<f64, MechanicsError> {
    let e2 = 2.0 * kepler_energy * angular_momentum * angular_momentum + 1.0;
    if e2 < -ECCENTRICITY_CLAMP {
        return Err(MechanicsError::InconsistentEnergyMomentum(e2));
    }
    Ok(e2.max(0.0).sqrt())
}

/// Period of a Kepler ellipse of energy `E < 0` (third law, `T^2 = -pi^2 / (2E^3)`).
pub fn kepler_period(kepler_energy: f64) -> Result<f64, MechanicsError> {
    if !(kepler_energy < 0.0) {
        return Err(MechanicsError::NonNegativeEnergy(kepler_energy));
    }
    Ok(2.0 * PI / (-2.0 * kepler_energy).powf(1.5))
}

/// `H = E + L`.
pub fn rotating_hamiltonian(s: &CartesianState) -> f64 {
    kepler_energy(s) + angular_momentum(s)
}

/// The magnetic form `|p1 - q2|^2/2 + |p2 + q1|^2/2 + U(q)`; equal to
/// [`rotating_hamiltonian`].
pub fn mechanical_hamiltonian(s: &CartesianState) -> f64 {
    let [q1, q2] = s.q;
    let [p1, p2] = s.p;
    let potential = -1.0 / s.radius() - 0.5 * (q1 * q1 + q2 * q2);
    0.5 * (p1 - q2).powi(2) + 0.5 * (p2 + q1).powi(2) + potential
}

/// `U(rho) = -1/rho - rho^2/2`.
pub fn effective_potential(radius: f64) -> Result<f64, MechanicsError> {
    if !(radius > 0.0) {
        return Err(MechanicsError::NonPositiveRadius(radius));
    }
    Ok(effective_potential_unchecked(radius))
}

fn effective_potential_unchecked(radius: f64) -> f64 {
    -1.0 / radius - 0.5 * radius * radius
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HillRegion {
    /// Inside the bounded component around the primary.
    Bounded,
    /// Between the two components; not reachable at this energy.
    Forbidden,
    Unbounded,
    /// Sub- or critical energy: the Hill region is the whole punctured plane.
    AllowedEverywhere,
}

/// Radii `(inner, outer)` where `U(rho) = -c`, for `c > 3/2`.
pub fn hill_radii(c: f64) -> Option<(f64, f64)> {
    if !(c > CRITICAL_JACOBI) || !c.is_finite() {
        return None;
    }
    let level = |rho: f64| effective_potential_unchecked(rho) + c;
    // U + c < 0 at both outer brackets, > 0 at the maximum rho = 1.
    let inner = bisect(level, 1.0 / (c + 1.0), 1.0, HILL_ROOT_TOL);
    let outer = bisect(level, 1.0, (2.0 * (c + 1.0)).sqrt(), HILL_ROOT_TOL);
    Some((inner, outer))
}

pub fn hill_region_classify(c: f64, radius: f64) -> Result<HillRegion, MechanicsError> {
    if !(radius > 0.0) {
        return Err(MechanicsError::NonPositiveRadius(radius));
    }
    let Some((inner, outer)) = hill_radii(c) else {
        return Ok(HillRegion::AllowedEverywhere);
    };
    Ok(if radius <= inner {
        HillRegion::Bounded
    } else if radius >= outer {
        HillRegion::Unbounded
    } else {
        HillRegion::Forbidden
    })
}

/// Bisection for a root of `f` on `[lo, hi]` with `f(lo)` and `f(hi)` of
/// opposite signs.
pub(crate) fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut f_lo = f(lo);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
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

/// Moser energy `K_k = |q| (E + k) + 1 = (|p|^2 + 2k) |q| / 2`.
pub fn moser_energy(s: &CartesianState, k: f64) -> Result<f64, MechanicsError> {
    if !(k > 0.0) {
        return Err(MechanicsError::NonPositiveLevel(k));
    }
    let [p1, p2] = s.p;
    Ok(0.5 * (p1 * p1 + p2 * p2 + 2.0 * k) * s.radius())
}

pub fn to_polar(s: &CartesianState) -> PolarState {
    let [q1, q2] = s.q;
    let [p1, p2] = s.p;
    let x = s.radius();
    let y = q2.atan2(q1);
    PolarState {
        x,
        y,
        r: (q1 * p1 + q2 * p2) / x,
        t: q1 * p2 - q2 * p1,
    }
}

pub fn from_polar(s: &PolarState) -> Result<CartesianState, MechanicsError> {
    let (sin_y, cos_y) = s.y.sin_cos();
    let tangential = s.t / s.x;
    CartesianState::new(
        [s.x * cos_y, s.x * sin_y],
        [
            s.r * cos_y - tangential * sin_y,
            s.r * sin_y + tangential * cos_y,
        ],
    )
}

/// Hamiltonian vector field of `H_a = E + a L` in polar coordinates, as
/// `(r', t', x', y')`. Angular momentum is conserved, so `t'` is exactly 0.
pub fn hamiltonian_vector_field_polar(s: &PolarState, a: f64) -> Vec4 {
    let x = s.x;
    let mut out = [0.0; 4];
    out[R] = (s.t * s.t - x) / (x * x * x);
    out[T] = 0.0;
    out[X] = s.r;
    out[Y] = s.t / (x * x) + a;
    out
}

/// Classical RK4 integration of the polar vector field with `steps` equal
/// steps.
pub fn propagate_polar(s: &PolarState, a: f64, duration: f64, steps: usize) -> PolarState {
    let h = duration / steps.max(1) as f64;
    let shift = |s: &PolarState, k: &Vec4, f: f64| PolarState {
        x: s.x + f * k[X],
        y: s.y + f * k[Y],
        r: s.r + f * k[R],
        t: s.t + f * k[T],
    };
    let mut cur = *s;
    for _ in 0..steps.max(1) {
        let k1 = hamiltonian_vector_field_polar(&cur, a);
        let k2 = hamiltonian_vector_field_polar(&shift(&cur, &k1, 0.5 * h), a);
        let k3 = hamiltonian_vector_field_polar(&shift(&cur, &k2, 0.5 * h), a);
        let k4 = hamiltonian_vector_field_polar(&shift(&cur, &k3, h), a);
        let mut k = [0.0; 4];
        for i in 0..4 {
            k[i] = (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) / 6.0;
        }
        cur = shift(&cur, &k, h);
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    fn state(q: [f64; 2], p: [f64; 2]) -> CartesianState {
        CartesianState::new(q, p).unwrap()
    }

    #[test]
    fn kepler_energy_examples() {
        assert_eq!(kepler_energy(&state([1.0, 0.0], [0.0, 1.0])), -0.5);
        assert_eq!(kepler_energy(&state([2.0, 0.0], [0.0, 0.0])), -0.5);
        assert_eq!(kepler_energy(&state([0.25, 0.0], [0.0, 2.0])), -2.0);
    }

    #[test]
    fn collision_rejected() {
        assert!(matches!(
            CartesianState::new([0.0, 0.0], [1.0, 0.0]),
            Err(MechanicsError::Collision { .. })
        ));
        assert!(CartesianState::new([1e-14, 0.0], [1.0, 0.0]).is_err());
        assert!(CartesianState::new([f64::NAN, 0.0], [1.0, 0.0]).is_err());
    }

    #[test]
    fn angular_momentum_examples() {
        assert_eq!(angular_momentum(&state([1.0, 0.0], [0.0, 1.0])), 1.0);
        assert_eq!(angular_momentum(&state([1.0, 0.0], [1.0, 0.0])), 0.0);
        assert_eq!(angular_momentum(&state([0.25, 0.0], [0.0, -2.0])), -0.5);
    }

    #[test]
    fn eccentricity_examples() {
        assert_eq!(eccentricity(-0.5, 1.0).unwrap(), 0.0);
        assert_eq!(eccentricity(-0.5, 0.0).unwrap(), 1.0);
        assert_eq!(eccentricity(-2.0, 0.5).unwrap(), 0.0);
        assert_eq!(eccentricity(-0.5, 1.0 + 1e-14).unwrap(), 0.0);
        assert!(matches!(
            eccentricity(-1.0, 1.0),
            Err(MechanicsError::InconsistentEnergyMomentum(_))
        ));
    }

    #[test]
    fn kepler_period_examples() {
        assert!((kepler_period(-0.5).unwrap() - 2.0 * PI).abs() < 1e-15);
        assert!((kepler_period(-2.0).unwrap() - PI / 4.0).abs() < 1e-15);
        let e21 = -0.5 * 2.0_f64.powf(2.0 / 3.0);
        assert!((kepler_period(e21).unwrap() - PI).abs() < 1e-14);
        assert!(kepler_period(0.0).is_err());
        assert!(kepler_period(0.3).is_err());
    }

    #[test]
    fn rotating_hamiltonian_examples() {
        assert_eq!(rotating_hamiltonian(&state([1.0, 0.0], [0.0, 1.0])), 0.5);
        assert_eq!(rotating_hamiltonian(&state([0.25, 0.0], [0.0, 2.0])), -1.5);
        let s = state([1.0, 0.0], [0.0, 0.0]);
        let triple = EnergyTriple::of(&s);
        assert_eq!((triple.kepler_energy, triple.angular_momentum), (-1.0, 0.0));
        assert_eq!(triple.hamiltonian(), -1.0);
    }

    #[test]
    fn effective_potential_examples() {
        assert_eq!(effective_potential(1.0).unwrap(), -1.5);
        assert_eq!(effective_potential(2.0).unwrap(), -2.5);
        assert_eq!(effective_potential(0.5).unwrap(), -17.0 / 8.0);
        assert!(effective_potential(0.0).is_err());
        assert!(effective_potential(-1.0).is_err());
    }

    #[test]
    fn hill_region_examples() {
        assert_eq!(hill_region_classify(2.0, 0.2).unwrap(), HillRegion::Bounded);
        assert_eq!(
            hill_region_classify(2.0, 1.0).unwrap(),
            HillRegion::Forbidden
        );
        assert_eq!(
            hill_region_classify(2.0, 5.0).unwrap(),
            HillRegion::Unbounded
        );
        assert_eq!(
            hill_region_classify(1.0, 1.0).unwrap(),
            HillRegion::AllowedEverywhere
        );
        assert_eq!(
            hill_region_classify(1.5, 1.0).unwrap(),
            HillRegion::AllowedEverywhere
        );
        let (inner, outer) = hill_radii(2.0).unwrap();
        assert!((effective_potential(inner).unwrap() + 2.0).abs() < 1e-10);
        assert!((effective_potential(outer).unwrap() + 2.0).abs() < 1e-10);
        assert!(inner < 1.0 && outer > 1.0);
    }

    #[test]
    fn moser_energy_examples() {
        assert_eq!(
            moser_energy(&state([1.0, 0.0], [0.0, 1.0]), 0.5).unwrap(),
            1.0
        );
        assert_eq!(
            moser_energy(&state([2.0, 0.0], [0.0, 0.0]), 0.5).unwrap(),
            1.0
        );
        let k = 2.0;
        let f = (2.0 * k).sqrt();
        let scaled = state([1.0 / f, 0.0], [0.0, f]);
        let lhs = moser_energy(&scaled, k).unwrap();
        let rhs = f * moser_energy(&state([1.0, 0.0], [0.0, 1.0]), 0.5).unwrap();
        assert!((lhs - 2.0).abs() < 1e-15 && (lhs - rhs).abs() < 1e-15);
        assert!(moser_energy(&scaled, 0.0).is_err());
    }

    #[test]
    fn polar_examples() {
        let p = to_polar(&state([1.0, 0.0], [0.0, 1.0]));
        assert_eq!((p.x, p.y, p.r, p.t), (1.0, 0.0, 0.0, 1.0));
        let c = from_polar(&PolarState::new(1.0, PI / 2.0, 0.0, 1.0).unwrap()).unwrap();
        assert!((c.q()[0]).abs() < 1e-16 && (c.q()[1] - 1.0).abs() < 1e-16);
        assert!((c.p()[0] + 1.0).abs() < 1e-16 && c.p()[1].abs() < 1e-16);
        assert!(
            (PolarState::new(1.0, 5.0 * PI, 0.0, 0.0)
                .unwrap()
                .reduced_angle()
                - PI)
                .abs()
                < 1e-12
        );
    }

    #[test]
    fn vector_field_examples() {
        let circ = PolarState::new(0.25, 0.0, 0.0, 0.5).unwrap();
        let v = hamiltonian_vector_field_polar(&circ, 1.0);
        assert_eq!(v, [0.0, 0.0, 0.0, 9.0]);
        let lagrange = PolarState::new(1.0, 0.0, 0.0, -1.0).unwrap();
        assert_eq!(hamiltonian_vector_field_polar(&lagrange, 1.0)[Y], 0.0);
        let generic = PolarState::new(0.7, 1.0, 0.3, -0.4).unwrap();
        assert_eq!(hamiltonian_vector_field_polar(&generic, 1.0)[T], 0.0);
    }
}
