//! Field snapshots in the three formulations.

use serde::{Deserialize, Serialize};

/// Azimuthal angle `u` and `u_t` on the grid nodes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UState {
    pub u: Vec<f64>,
    pub u_t: Vec<f64>,
    pub t: f64,
    /// Winding number the state was built for.
    pub n1: u32,
}

/// The lifted field `v = (u − φ)/r` and `v_t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VState {
    pub v: Vec<f64>,
    pub v_t: Vec<f64>,
    pub t: f64,
}

/// The auxiliary field `Φ` and `Φ_t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhiState {
    pub phi: Vec<f64>,
    pub phi_t: Vec<f64>,
    pub t: f64,
}

fn all_finite(xs: &[f64]) -> bool {
    xs.iter().all(|x| x.is_finite())
}

impl UState {
    pub fn is_finite(&self) -> bool {
        all_finite(&self.u) && all_finite(&self.u_t)
    }
}

impl VState {
    pub fn zeros(n: usize) -> Self {
        Self { v: vec![0.0; n], v_t: vec![0.0; n], t: 0.0 }
    }

    pub fn len(&self) -> usize {
        self.v.len()
    }

    pub fn is_empty(&self) -> bool {
        self.v.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        all_finite(&self.v) && all_finite(&self.v_t)
    }
}

impl PhiState {
    pub fn is_finite(&self) -> bool {
        all_finite(&self.phi) && all_finite(&self.phi_t)
    }
}
