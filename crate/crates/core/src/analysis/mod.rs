//! Spectral norms, inequality suites, decay monitors and initial-data
//! validation.

pub mod bessel;
pub mod comparison;
pub mod decay;
pub mod hankel;
pub mod inequalities;
pub mod norms;
pub mod validation;

pub use comparison::comparison_i;
pub use decay::{decay_monitors, DecayMonitors};
pub use hankel::{hankel_forward, hankel_inverse, SpectralField};
pub use norms::{sobolev_norm, NormSpec};
pub use validation::{validate_initial_data, ValidationReport};
