//! Per-checkpoint diagnostics and transform-chain residuals.

use serde::{Deserialize, Serialize};

use crate::analysis::decay::{decay_monitors, DecayMonitors};
use crate::cutoff::CutoffProfile;
use crate::error::Result;
use crate::fields::VState;
use crate::grid::{l2_norm, radial_derivative, radial_laplacian, Dimension, Parity, RadialGrid};
use crate::model::{
    build_phi, charge_ratio, energy, phi_second_time_derivative, recover_grad_v, rhs_phi, u_from_v, EnergyBreakdown,
};
use crate::params::Tolerances;
use crate::solver::acceleration_v;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsReport {
    pub t: f64,
    pub energy: EnergyBreakdown,
    pub charge: i64,
    pub charge_raw: f64,
    pub monitors: DecayMonitors,
}

impl DiagnosticsReport {
    /// `‖(1 + r)(|v| + |∇v|)‖_∞`.
    pub fn continuation(&self) -> f64 {
        self.monitors.continuation
    }

    pub fn is_finite(&self) -> bool {
        self.energy.total.is_finite() && self.charge_raw.is_finite() && self.monitors.all_finite()
    }
}

/// Energy, charge and decay monitors of a lifted state.
pub fn diagnose(v: &VState, cut: &CutoffProfile, grid: &RadialGrid, tol: &Tolerances) -> Result<DiagnosticsReport> {
    let u = u_from_v(v, cut, grid)?;
    let e = energy(&u, grid)?;
    let raw = charge_ratio(&u.u, grid);
    let phi = build_phi(v, cut, grid, tol)?;
    let monitors = decay_monitors(&u, v, &phi, cut, grid)?;
    Ok(DiagnosticsReport { t: v.t, energy: e, charge: raw.round() as i64, charge_raw: raw, monitors })
}

/// Discrete residuals of the identities linking `v` and `Φ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainResiduals {
    /// `‖Φ_tt − Δ₄Φ − rhs_phi‖_{L²(ℝ⁴)}`, with `Φ_tt` from the closed form
    /// and `v_tt` from the equation of motion.
    pub box_phi: f64,
    /// `max |v_t − Ã^{−1/2} Φ_t|`.
    pub recovered_v_t: f64,
    /// `‖v_r − recovered v_r‖_{L²(ℝ⁴)}`.
    pub recovered_v_r: f64,
}

pub fn chain_residuals(v: &VState, cut: &CutoffProfile, grid: &RadialGrid, tol: &Tolerances) -> Result<ChainResiduals> {
    let phi = build_phi(v, cut, grid, tol)?;
    let v_tt = acceleration_v(v, cut, grid)?;
    let phi_tt = phi_second_time_derivative(v, &v_tt, cut, grid)?;
    let lap = radial_laplacian(&phi.phi, grid, Dimension::Four, Parity::Even)?;
    let rhs = rhs_phi(v, cut, grid, tol)?;
    let box_res: Vec<f64> = phi_tt.iter().zip(&lap).zip(&rhs).map(|((a, b), c)| a - b - c).collect();

    let (vt_rec, vr_rec) = recover_grad_v(&phi, v, cut, grid, tol)?;
    let v_r = radial_derivative(&v.v, grid, Parity::Even)?;
    let recovered_v_t = vt_rec.iter().zip(&v.v_t).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let vr_res: Vec<f64> = vr_rec.iter().zip(&v_r).map(|(a, b)| a - b).collect();
    Ok(ChainResiduals {
        box_phi: l2_norm(&box_res, grid, Dimension::Four)?,
        recovered_v_t,
        recovered_v_r: l2_norm(&vr_res, grid, Dimension::Four)?,
    })
}
