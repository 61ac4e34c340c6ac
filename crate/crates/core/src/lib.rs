//! Radial solver, transform chain and diagnostics for the 2+1-dimensional
//! equivariant Faddeev model.
//!
//! The azimuthal angle `u(t, r)` is lifted to `v = (u − φ)/r`, which obeys a
//! 4+1-dimensional radial wave equation regular at the axis. The solver
//! evolves `v`; `u` and the auxiliary field `Φ` are derived views used as
//! live cross-checks.

// `!(x <= tol)` is used on purpose so that NaN fails the check
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod cutoff;
pub mod diagnostics;
pub mod error;
pub mod fields;
pub mod grid;
pub mod manufactured;
pub mod model;
pub mod params;
pub mod quadrature;
pub mod solver;
pub mod special;

pub use cutoff::CutoffProfile;
pub use error::{Error, Result};
pub use fields::{PhiState, UState, VState};
pub use grid::{make_grid, Dimension, Parity, RadialGrid};
pub use params::{ModelParams, Tolerances};
