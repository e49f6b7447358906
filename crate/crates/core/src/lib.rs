//! Periodic orbits and Conley-Zehnder indices of the rotating Kepler problem.
//!
//! The crate is `no_std` (it needs `alloc`) and purely computational:
//!
//! - [`mechanics`]: Kepler and rotating-frame Hamiltonians, polar coordinates,
//!   Hill regions and Moser energies.
//! - [`maslov`]: Robbin-Salamon index of paths in `Sp(2)` via crossing forms.
//! - [`linearized`]: linearized flow around circular orbits in the contact
//!   trivialization, in closed form and by numerical integration.
//! - [`catalog`]: circular orbits, `T_{k,l}` torus families, index formulas and
//!   the dynamical convexity report.
//! - [`levi_civita`]: the regularized Hamiltonian in Levi-Civita coordinates,
//!   its derivatives, the non-convexity witness and a sampling scanner.
//!
//! Units are normalized: gravitational parameter, primary mass and frame
//! rotation rate are all 1.

#![no_std]
// `!(x > 0.0)` deliberately rejects NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

extern crate alloc;

pub mod catalog;
pub mod error;
pub mod levi_civita;
pub mod linalg;
pub mod linearized;
pub mod maslov;
pub mod mechanics;

pub use error::{CatalogError, ConvexityError, Error, FlowError, MaslovError, MechanicsError};
