//! Linearized flow around circular orbits.
//!
//! In polar coordinates `(r, t, x, y)` a circular orbit is
//! `(0, t0, t0^2, (1/t0^3 + a) s)`. The variational equation along it is
//! autonomous. Restricted to the contact plane spanned by the frame
//! `(X1, X2)` it becomes the rotation generator `[[0, -1/t0^4], [1/t0^2, 0]]`,
//! so the linearized return map is a rotation by `s / t0^3`.

use alloc::vec::Vec;

// Unused when std is linked and the inherent f64 methods take over.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{FlowError, MaslovError};
use crate::linalg::{mat4_mul_vec, solve3, Mat2, Mat3, Mat4, Vec4};
use crate::maslov::SymplecticPath;
use crate::mechanics::{hamiltonian_vector_field_polar, PolarState, R, T, X, Y};

/// Direction of a circular orbit relative to the rotating frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    /// Positive angular momentum.
    Retrograde,
    /// Negative angular momentum.
    Direct,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Retrograde => 1.0,
            Orientation::Direct => -1.0,
        }
    }
}

/// A circular Kepler orbit: radius `x0`, angular momentum `t0 = +-sqrt(x0)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CircularOrbitSeed {
    x0: f64,
    t0: f64,
    orientation: Orientation,
    a: f64,
}

impl CircularOrbitSeed {
    pub fn from_radius(x0: f64, orientation: Orientation) -> Result<Self, FlowError> {
        if !(x0 > 0.0) || !x0.is_finite() {
            return Err(FlowError::InvalidSeed("radius must be positive and finite"));
        }
        Ok(Self::from_t0(orientation.sign() * x0.sqrt(), orientation))
    }

    pub fn from_kepler_energy(energy: f64, orientation: Orientation) -> Result<Self, FlowError> {
        if !(energy < 0.0) || !energy.is_finite() {
            return Err(FlowError::InvalidSeed("Kepler energy must be negative"));
        }
        Ok(Self::from_t0(
            orientation.sign() / (-2.0 * energy).sqrt(),
            orientation,
        ))
    }

    /// Seed with angular momentum `t0 != 0`; the sign fixes the orientation.
    pub fn from_angular_momentum(t0: f64) -> Result<Self, FlowError> {
        if t0 == 0.0 || !t0.is_finite() {
            return Err(FlowError::InvalidSeed("angular momentum must be non-zero"));
        }
        let orientation = if t0 > 0.0 {
            Orientation::Retrograde
        } else {
            Orientation::Direct
        };
        Ok(Self::from_t0(t0, orientation))
    }

    fn from_t0(t0: f64, orientation: Orientation) -> Self {
        Self {
            x0: t0 * t0,
            t0,
            orientation,
            a: 1.0,
        }
    }

    pub fn with_rotation_rate(mut self, a: f64) -> Self {
        self.a = a;
        self
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn rotation_rate(&self) -> f64 {
        self.a
    }

    pub fn kepler_energy(&self) -> f64 {
        -0.5 / self.x0
    }

    /// Angular speed in the rotating frame, `t0/x0^2 + a`.
    pub fn angular_speed(&self) -> f64 {
        self.t0 / (self.x0 * self.x0) + self.a
    }

    /// The point of the orbit with `y = 0`.
    pub fn state(&self) -> PolarState {
        PolarState {
            x: self.x0,
            y: 0.0,
            r: 0.0,
            t: self.t0,
        }
    }

    /// Rotation speed `1/|t0|^3` of the linearized return map.
    pub fn linear_frequency(&self) -> f64 {
        1.0 / self.t0.abs().powi(3)
    }
}

/// Variational matrix in the order `(r, t, x, y)`.
pub fn linearized_matrix(seed: &CircularOrbitSeed) -> Mat4 {
    let (t0, x0) = (seed.t0, seed.x0);
    let x3 = x0 * x0 * x0;
    let mut m = [[0.0; 4]; 4];
    m[R][T] = 2.0 * t0 / x3;
    m[R][X] = -1.0 / x3;
    m[X][R] = 1.0;
    m[Y][T] = 1.0 / (x0 * x0);
    m[Y][X] = -2.0 * t0 / x3;
    m
}

/// Contact-plane frame `(X1, X2)` and the Hamiltonian vector field at a state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrivializationFrame {
    pub x1: Vec4,
    pub x2: Vec4,
    pub xh: Vec4,
}

const FRAME_TOL: f64 = 1e-10;

/// The frame at `state` for `H = E + a L`. For `a = 1` it is
///
/// ```text
/// X1 = (t/x) dr - rx/(tx+1) dt + rx^3/(tx+1) dx + dy
/// X2 = -(x - t^2)/(x(tx+1)) dt + (t + a x^2)/(tx+1) dx
/// ```
///
/// For other `a` the `dt` entry of `X1` is adjusted so that `dH(X1) = 0`.
pub fn trivialization_frame(state: &PolarState, a: f64) -> Result<TrivializationFrame, FlowError> {
    let PolarState { x, r, t, .. } = *state;
    let tx1 = t * x + 1.0;
    if tx1.abs() < FRAME_TOL || !(x > 0.0) {
        return Err(FlowError::FrameSingular(tx1.abs()));
    }
    let speed = t + a * x * x;
    if a != 1.0 && speed.abs() < FRAME_TOL {
        return Err(FlowError::FrameSingular(speed.abs()));
    }
    let mut x1 = [0.0; 4];
    x1[R] = t / x;
    x1[T] = if a == 1.0 {
        -r * x / tx1
    } else {
        -r * x * (t + x * x) / (tx1 * speed)
    };
    x1[X] = r * x * x * x / tx1;
    x1[Y] = 1.0;
    let mut x2 = [0.0; 4];
    x2[T] = -(x - t * t) / (x * tx1);
    x2[X] = speed / tx1;
    Ok(TrivializationFrame {
        x1,
        x2,
        xh: hamiltonian_vector_field_polar(state, a),
    })
}

/// `lambda = -x dr + t dy` evaluated on `v` at `state`.
pub fn contact_form(state: &PolarState, v: &Vec4) -> f64 {
    -state.x * v[R] + state.t * v[Y]
}

/// `d lambda = -dx ^ dr + dt ^ dy`.
pub fn contact_differential(u: &Vec4, v: &Vec4) -> f64 {
    -(u[X] * v[R] - u[R] * v[X]) + (u[T] * v[Y] - u[Y] * v[T])
}

/// `dH_a` evaluated on `v` at `state`.
pub fn energy_differential(state: &PolarState, a: f64, v: &Vec4) -> f64 {
    let PolarState { x, r, t, .. } = *state;
    r * v[R] + (t / (x * x) + a) * v[T] + (x - t * t) / (x * x * x) * v[X]
}

/// Coordinates of `v` in the basis `(X1, X2, XH)`, least squares.
fn frame_coordinates(frame: &TrivializationFrame, v: &Vec4) -> Result<[f64; 3], FlowError> {
    let basis = [frame.x1, frame.x2, frame.xh];
    let mut gram: Mat3 = [[0.0; 3]; 3];
    let mut rhs = [0.0; 3];
    for i in 0..3 {
        for j in 0..3 {
            gram[i][j] = (0..4).map(|k| basis[i][k] * basis[j][k]).sum();
        }
        rhs[i] = (0..4).map(|k| basis[i][k] * v[k]).sum();
    }
    solve3(gram, rhs).ok_or(FlowError::FrameSingular(0.0))
}

/// Contact-plane block of the variational generator, computed by projecting
/// the 4x4 matrix onto `(X1, X2)` along `XH` and checked against
/// `[[0, -1/t0^4], [1/t0^2, 0]]`.
pub fn reduced_generator(seed: &CircularOrbitSeed) -> Result<Mat2, FlowError> {
    if seed.a != 1.0 {
        return Err(FlowError::UnsupportedRotationRate(seed.a));
    }
    let frame = trivialization_frame(&seed.state(), seed.a)?;
    let m = linearized_matrix(seed);
    let c1 = frame_coordinates(&frame, &mat4_mul_vec(&m, &frame.x1))?;
    let c2 = frame_coordinates(&frame, &mat4_mul_vec(&m, &frame.x2))?;
    let projected = Mat2::new(c1[0], c2[0], c1[1], c2[1]);
    let expected = closed_form_generator(seed);
    let err = (projected - expected).max_abs() / expected.max_abs();
    if err > 1e-10 {
        return Err(FlowError::GeneratorMismatch(err));
    }
    Ok(projected)
}

/// `[[0, -1/t0^4], [1/t0^2, 0]]`.
pub fn closed_form_generator(seed: &CircularOrbitSeed) -> Mat2 {
    let t2 = seed.t0 * seed.t0;
    Mat2::new(0.0, -1.0 / (t2 * t2), 1.0 / t2, 0.0)
}

/// `[[cos(s/t0^3), -sin(s/t0^3)/t0], [t0 sin(s/t0^3), cos(s/t0^3)]]`.
pub fn closed_form_matrix(seed: &CircularOrbitSeed, s: f64) -> Mat2 {
    let t0 = seed.t0;
    let (sin, cos) = (s / (t0 * t0 * t0)).sin_cos();
    Mat2::new(cos, -sin / t0, t0 * sin, cos)
}

pub fn closed_form_path(
    seed: &CircularOrbitSeed,
    duration: f64,
) -> Result<SymplecticPath, MaslovError> {
    SymplecticPath::from_generator(closed_form_generator(seed), duration)
}

/// Default bound on the summed RK4 local error.
pub const DEFAULT_STEP_CONTROL: f64 = 1e-10;

/// Integrates the 4x4 variational equation with fixed-step RK4, projects the
/// images of `X1, X2` onto the contact plane at every step and returns the
/// sampled path.
///
/// For a rotation at angle `theta` per step RK4 errs by about `theta^5/120`.
/// The step is chosen so that this, summed over all steps and scaled by the
/// conditioning of the frame, stays below `step_control`.
pub fn numeric_monodromy_path(
    seed: &CircularOrbitSeed,
    duration: f64,
    step_control: f64,
) -> Result<SymplecticPath, FlowError> {
    if !(duration > 0.0) || !duration.is_finite() {
        return Err(FlowError::InvalidDuration(duration));
    }
    let frame = trivialization_frame(&seed.state(), seed.a)?;
    let omega = seed.linear_frequency();
    let t_abs = seed.t0.abs();
    let conditioning = t_abs.max(1.0 / t_abs).powi(2);
    let h_max = (120.0 * step_control / (duration * omega.powi(5) * conditioning)).powf(0.25);
    // At least four samples per unit of rotation angle keep the Hermite
    // interpolant of the sampled path accurate.
    let h_max = h_max.min(0.25 / omega);
    if !(h_max >= 1e-9 * duration) {
        return Err(FlowError::StepUnderflow { step: h_max });
    }
    let steps = ((duration / h_max).ceil() as usize).max(4);
    let h = duration / steps as f64;

    let m = linearized_matrix(seed);
    let rk4 = |v: &Vec4| {
        let add =
            |a: &Vec4, b: &Vec4, f: f64| core::array::from_fn::<f64, 4, _>(|i| a[i] + f * b[i]);
        let k1 = mat4_mul_vec(&m, v);
        let k2 = mat4_mul_vec(&m, &add(v, &k1, 0.5 * h));
        let k3 = mat4_mul_vec(&m, &add(v, &k2, 0.5 * h));
        let k4 = mat4_mul_vec(&m, &add(v, &k3, h));
        core::array::from_fn::<f64, 4, _>(|i| {
            v[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
        })
    };
    let mut v1 = frame.x1;
    let mut v2 = frame.x2;
    let mut mats = Vec::with_capacity(steps + 1);
    for i in 0..=steps {
        if i > 0 {
            v1 = rk4(&v1);
            v2 = rk4(&v2);
        }
        let c1 = frame_coordinates(&frame, &v1)?;
        let c2 = frame_coordinates(&frame, &v2)?;
        mats.push(Mat2::new(c1[0], c2[0], c1[1], c2[1]));
    }
    Ok(SymplecticPath::from_samples(h, mats)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn seed(t0: f64) -> CircularOrbitSeed {
        CircularOrbitSeed::from_angular_momentum(t0).unwrap()
    }

    #[test]
    fn seed_invariants() {
        let s = CircularOrbitSeed::from_radius(0.25, Orientation::Retrograde).unwrap();
        assert_eq!(s.t0(), 0.5);
        assert_eq!(s.kepler_energy(), -2.0);
        assert_eq!(s.angular_speed(), 9.0);
        let d = CircularOrbitSeed::from_kepler_energy(-2.0, Orientation::Direct).unwrap();
        assert_eq!(d.t0(), -0.5);
        assert_eq!(d.angular_speed(), -7.0);
        assert!(CircularOrbitSeed::from_radius(0.0, Orientation::Direct).is_err());
        assert!(CircularOrbitSeed::from_kepler_energy(0.0, Orientation::Direct).is_err());
    }

    #[test]
    fn matrix_entries() {
        let m = linearized_matrix(&seed(0.5));
        assert_eq!(m[0], [0.0, 64.0, -64.0, 0.0]);
        assert_eq!(m[1], [0.0; 4]);
        assert_eq!(m[2], [1.0, 0.0, 0.0, 0.0]);
        assert_eq!(m[3], [0.0, 16.0, -64.0, 0.0]);
    }

    #[test]
    fn frame_at_circular_orbit() {
        let f = trivialization_frame(&seed(0.5).state(), 1.0).unwrap();
        assert_eq!(f.x1, [2.0, 0.0, 0.0, 1.0]);
        assert_eq!(f.x2, [0.0, 0.0, 0.5, 0.0]);
        assert_eq!(f.xh, [0.0, 0.0, 0.0, 9.0]);
        assert_eq!(contact_differential(&f.x1, &f.x2), 1.0);
    }

    #[test]
    fn frame_singular() {
        let s = PolarState {
            x: 1.0,
            y: 0.0,
            r: 0.3,
            t: -1.0,
        };
        assert!(matches!(
            trivialization_frame(&s, 1.0),
            Err(FlowError::FrameSingular(_))
        ));
    }

    #[test]
    fn generator_examples() {
        assert_eq!(
            reduced_generator(&seed(0.5)).unwrap(),
            Mat2::new(0.0, -16.0, 4.0, 0.0)
        );
        let g = reduced_generator(&seed(1.0)).unwrap();
        assert!((g - Mat2::J).max_abs() < 1e-15);
        let g = reduced_generator(&seed(-0.7)).unwrap();
        assert!((g - closed_form_generator(&seed(-0.7))).max_abs() < 1e-12);
        assert!(matches!(
            reduced_generator(&seed(1.0).with_rotation_rate(2.0)),
            Err(FlowError::UnsupportedRotationRate(_))
        ));
    }

    #[test]
    fn closed_form_examples() {
        let m = closed_form_matrix(&seed(0.5), PI / 4.0);
        assert!((m - Mat2::IDENTITY).max_abs() < 1e-14);
        let m = closed_form_matrix(&seed(1.0), PI);
        assert!((m + Mat2::IDENTITY).max_abs() < 1e-15);
    }

    #[test]
    fn numeric_path_matches_closed_form() {
        let s = seed(0.5);
        let period = 2.0 * PI / 9.0;
        let path = numeric_monodromy_path(&s, period, DEFAULT_STEP_CONTROL).unwrap();
        let end = path.eval(period);
        assert!((end - closed_form_matrix(&s, period)).max_abs() < 1e-8);
        let angle = 16.0 * PI / 9.0;
        assert!((end.0[0][0] - angle.cos()).abs() < 1e-8);
    }

    #[test]
    fn step_underflow() {
        assert!(matches!(
            numeric_monodromy_path(&seed(0.5), 1.0, 1e-80),
            Err(FlowError::StepUnderflow { .. })
        ));
    }
}
