use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MechanicsError {
    #[error("collision state: |q| = {radius:e} is below the collision threshold")]
    Collision { radius: f64 },
    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(f64),
    #[error("inconsistent (E, L) pair: 2EL^2 + 1 = {0:e} < 0")]
    InconsistentEnergyMomentum(f64),
    #[error("Kepler energy must be negative, got {0}")]
    NonNegativeEnergy(f64),
    #[error("Moser level k must be positive, got {0}")]
    NonPositiveLevel(f64),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MaslovError {
    #[error("path duration must be positive and finite, got {0}")]
    InvalidDuration(f64),
    #[error("generator is not Hamiltonian (trace {0:e} != 0)")]
    NotHamiltonian(f64),
    #[error("sampled matrix has determinant {0}, expected 1")]
    NotSymplectic(f64),
    #[error("sampled path needs a uniform grid with at least 5 samples")]
    InvalidSamples,
    #[error("crossings near s = {time} could not be separated after grid refinement")]
    Unresolved { time: f64 },
    #[error("degenerate crossing at s = {time}: partial signature {signature}, nullity {nullity}")]
    DegenerateCrossing {
        time: f64,
        signature: i32,
        nullity: usize,
    },
    #[error("vector is not in ker(psi(s) - 1): residual {residual:e}")]
    NotInKernel { residual: f64 },
    #[error("s = {0} is not a crossing")]
    NotACrossing(f64),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FlowError {
    #[error("trivialization frame is singular (|tx + 1| = {0:e})")]
    FrameSingular(f64),
    #[error("invalid circular orbit seed: {0}")]
    InvalidSeed(&'static str),
    #[error("reduced generator requires rotation rate a = 1, got {0}")]
    UnsupportedRotationRate(f64),
    #[error("projected generator deviates from the closed form by {0:e}")]
    GeneratorMismatch(f64),
    #[error("required RK4 step {step:e} is below 1e-9 * duration")]
    StepUnderflow { step: f64 },
    #[error("duration must be positive and finite, got {0}")]
    InvalidDuration(f64),
    #[error(transparent)]
    Maslov(#[from] MaslovError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CatalogError {
    #[error("Kepler energy must be negative, got {0}")]
    NonNegativeEnergy(f64),
    #[error("direct circular orbit with E = {0} is not on the bounded component (need E < -1/2)")]
    OutsideBoundedComponent(f64),
    #[error("covering number must be at least 1")]
    ZeroCovering,
    #[error("torus family needs k > l >= 1, got ({k}, {l})")]
    InvalidTorus { k: u32, l: u32 },
    #[error("covering number {0} is not an integer")]
    NonInteger(f64),
    #[error("index bookkeeping for T({k},{l}) gave {got}, expected {expected}")]
    Mismatch {
        k: u32,
        l: u32,
        got: i64,
        expected: i64,
    },
    #[error("a crossing lies within {distance:e} of the endpoint for T({k},{l})")]
    CrossingNearEndpoint { k: u32, l: u32, distance: f64 },
    #[error("Jacobi parameter must exceed 3/2, got {0}")]
    SubCritical(f64),
    #[error("assertion '{assertion}' failed: {record}")]
    AssertionFailed {
        assertion: &'static str,
        record: alloc::string::String,
    },
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error(transparent)]
    Maslov(#[from] MaslovError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConvexityError {
    #[error("Jacobi parameter {0} is outside the supported range (1.4, 100]")]
    OutOfRange(f64),
    #[error("sample count must be at least 1")]
    NoSamples,
    #[error("ray does not reach the compact component")]
    RayMiss,
    #[error("gradient vanishes at a sample point (|DK| = {0:e})")]
    GradientVanishes(f64),
    #[error("witness check failed: {0}")]
    WitnessFailed(&'static str),
    #[error("too many rejected directions ({0}) while sampling")]
    SamplingExhausted(usize),
}

/// Umbrella error for callers that mix modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Mechanics(#[from] MechanicsError),
    #[error(transparent)]
    Maslov(#[from] MaslovError),
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Convexity(#[from] ConvexityError),
}
