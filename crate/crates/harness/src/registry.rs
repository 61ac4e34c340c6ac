//! Built-in initial-data families.
//!
//! Every family equals `φ` up to a perturbation that vanishes at the outer
//! edge, and matches the plateau `N₁π` at the axis to all orders, so the
//! compatibility conditions hold by construction.

use std::f64::consts::PI;

use faddeev_core::cutoff::bridge;
use faddeev_core::manufactured::Manufactured;
use faddeev_core::model::energy;
use faddeev_core::{CutoffProfile, ModelParams, RadialGrid, UState};

use crate::config::DataProfile;
use crate::error::{HarnessError, Result};

/// Initial data `(u₀, u₁)` on the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct InitialData {
    pub u0: Vec<f64>,
    pub u1: Vec<f64>,
    /// Amplitude multiplier found for the large-amplitude family.
    pub amplitude: Option<f64>,
}

impl InitialData {
    pub fn state(&self, n1: u32) -> UState {
        UState { u: self.u0.clone(), u_t: self.u1.clone(), t: 0.0, n1 }
    }
}

/// `φ + A (1 − b(2 − r)) N₁π e^{−αr²}`. The weight `1 − b(2 − r)` is the
/// normalized complement of `φ`, so the bump replaces the plateau on
/// `[1, 2]` and leaves it untouched on `[0, 1]`.
fn bump(grid: &RadialGrid, cut: &CutoffProfile, n1: u32, alpha: f64, amplitude: f64) -> Vec<f64> {
    let axis = n1 as f64 * PI;
    grid.radii()
        .iter()
        .zip(&cut.phi_cut.value)
        .map(|(&r, &p)| p + amplitude * (1.0 - bridge(2.0 - r).0) * axis * (-alpha * r * r).exp())
        .collect()
}

fn total_energy(u0: &[f64], n1: u32, grid: &RadialGrid) -> Result<f64> {
    let u = UState { u: u0.to_vec(), u_t: vec![0.0; u0.len()], t: 0.0, n1 };
    Ok(energy(&u, grid)?.total)
}

/// Smallest bisection bracket point `A` with `E(A) = factor · E(plateau)`.
fn large_amplitude(grid: &RadialGrid, cut: &CutoffProfile, n1: u32, alpha: f64, factor: f64) -> Result<f64> {
    let plateau = total_energy(&cut.phi_cut.value, n1, grid)?;
    let target = factor * plateau;
    let e = |a: f64| total_energy(&bump(grid, cut, n1, alpha, a), n1, grid);
    let (mut lo, mut hi) = (0.0, 1.0);
    while e(hi)? < target {
        hi *= 2.0;
        if hi > 1e6 {
            return Err(HarnessError::Config(format!("energy factor {factor} not reachable with alpha = {alpha}")));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if e(mid)? < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Builds the named family on `grid`.
pub fn initial_data_registry(
    profile: &DataProfile,
    params: &ModelParams,
    cut: &CutoffProfile,
    grid: &RadialGrid,
) -> Result<InitialData> {
    let n1 = params.n1;
    let n = grid.n_cells();
    let zeros = vec![0.0; n];
    let plateau = cut.phi_cut.value.clone();
    let data = match *profile {
        DataProfile::Plateau => InitialData { u0: plateau, u1: zeros, amplitude: None },
        DataProfile::GaussBump { alpha } => InitialData { u0: bump(grid, cut, n1, alpha, 1.0), u1: zeros, amplitude: None },
        DataProfile::KineticKick { beta } => {
            InitialData { u0: plateau, u1: grid.sample(|r| beta * r * (-r * r).exp()), amplitude: None }
        }
        DataProfile::LargeAmp { alpha, energy_factor } => {
            if n1 == 0 {
                return Err(HarnessError::Config("large-amp needs n1 ≥ 1".into()));
            }
            let a = large_amplitude(grid, cut, n1, alpha, energy_factor)?;
            InitialData { u0: bump(grid, cut, n1, alpha, a), u1: zeros, amplitude: Some(a) }
        }
        DataProfile::Manufactured => {
            let m = Manufactured { n1, r_max: grid.r_max(), t_final: params.t_final };
            let v = m.exact(0.0, grid);
            let u0 = grid.radii().iter().zip(&v.v).zip(&plateau).map(|((r, v), p)| r * v + p).collect();
            let u1 = grid.radii().iter().zip(&v.v_t).map(|(r, v)| r * v).collect();
            InitialData { u0, u1, amplitude: None }
        }
    };
    // a slowly decaying bump would violate the outer trace condition
    let edge = grid.edge_trace(&data.u0).abs().max(grid.edge_trace(&data.u1).abs());
    if edge.is_nan() || edge > params.tolerances.boundary {
        return Err(HarnessError::Config(format!(
            "profile `{}` does not decay within r_max = {} (edge value {edge:e})",
            profile.name(),
            grid.r_max()
        )));
    }
    Ok(data)
}
