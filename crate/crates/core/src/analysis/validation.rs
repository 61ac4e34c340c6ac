//! Admissibility checks for initial data `(u₀, u₁)`.

use serde::{Deserialize, Serialize};

use super::norms::{sobolev_norm, NormSpec};
use crate::cutoff::CutoffProfile;
use crate::error::Result;
use crate::fields::UState;
use crate::grid::{Dimension, RadialGrid};
use crate::model::{energy, phi_second_time_derivative, v_from_u, EnergyBreakdown};
use crate::params::ModelParams;
use crate::solver::acceleration_v;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum ValidationFailure {
    AxisTrace { value: f64, expected: f64 },
    OuterTrace { value: f64 },
    VelocityAxisTrace { value: f64 },
    VelocityOuterTrace { value: f64 },
    NonFinite { quantity: String },
    Numerical { message: String },
}

impl std::fmt::Display for ValidationFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::AxisTrace { value, expected } => write!(f, "u0(0) = {value}, expected {expected}"),
            Self::OuterTrace { value } => write!(f, "u0(r_max) = {value}, expected 0"),
            Self::VelocityAxisTrace { value } => write!(f, "u1(0) = {value}, expected 0"),
            Self::VelocityOuterTrace { value } => write!(f, "u1(r_max) = {value}, expected 0"),
            Self::NonFinite { quantity } => write!(f, "{quantity} is not finite"),
            Self::Numerical { message } => write!(f, "{message}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub axis_trace: f64,
    pub outer_trace: f64,
    pub velocity_axis_trace: f64,
    pub velocity_outer_trace: f64,
    pub energy: Option<EnergyBreakdown>,
    /// `‖v(0)‖_{H^s(ℝ⁴)}`.
    pub v_hs: Option<f64>,
    /// `‖v_t(0)‖_{H^{s−1}(ℝ⁴)}`.
    pub v_t_hs1: Option<f64>,
    /// `‖Φ_t(0)‖_{Ḣ¹(ℝ⁴)}`.
    pub phi_t_h1: Option<f64>,
    /// `‖Φ_tt(0)‖_{L²(ℝ⁴)}`.
    pub phi_tt_l2: Option<f64>,
    pub failures: Vec<ValidationFailure>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// `‖Φ_t(0)‖_{Ḣ¹} + ‖Φ_tt(0)‖_{L²}` when both were computed.
    pub fn phi_time_norms(&self) -> Option<f64> {
        Some(self.phi_t_h1? + self.phi_tt_l2?)
    }
}

fn finite_or(failures: &mut Vec<ValidationFailure>, name: &str, x: f64) -> Option<f64> {
    if x.is_finite() {
        Some(x)
    } else {
        failures.push(ValidationFailure::NonFinite { quantity: name.to_string() });
        None
    }
}

fn record<T>(failures: &mut Vec<ValidationFailure>, r: Result<T>) -> Option<T> {
    match r {
        Ok(x) => Some(x),
        Err(e) => {
            failures.push(ValidationFailure::Numerical { message: e.to_string() });
            None
        }
    }
}

/// Checks compatibility traces, finite energy, the Sobolev norms of the
/// lifted data and the time-derivative norms of the auxiliary field.
pub fn validate_initial_data(
    u0: &[f64],
    u1: &[f64],
    params: &ModelParams,
    cut: &CutoffProfile,
    grid: &RadialGrid,
) -> Result<ValidationReport> {
    grid.check_len(u0)?;
    grid.check_len(u1)?;
    let tol = &params.tolerances;
    let expected = params.axis_value();
    let scale = expected.abs().max(1.0);
    let mut failures = Vec::new();

    let axis_trace = grid.axis_extrapolation(u0);
    let outer_trace = grid.edge_trace(u0);
    let velocity_axis_trace = grid.axis_extrapolation(u1);
    let velocity_outer_trace = grid.edge_trace(u1);
    // The extrapolations carry an O(dr⁴) error of their own.
    let slack = tol.boundary.max(grid.dr().powi(4)) * scale;
    if !((axis_trace - expected).abs() <= slack) {
        failures.push(ValidationFailure::AxisTrace { value: axis_trace, expected });
    }
    if !(outer_trace.abs() <= slack) {
        failures.push(ValidationFailure::OuterTrace { value: outer_trace });
    }
    if !(velocity_axis_trace.abs() <= slack) {
        failures.push(ValidationFailure::VelocityAxisTrace { value: velocity_axis_trace });
    }
    if !(velocity_outer_trace.abs() <= slack) {
        failures.push(ValidationFailure::VelocityOuterTrace { value: velocity_outer_trace });
    }

    let u = UState { u: u0.to_vec(), u_t: u1.to_vec(), t: 0.0, n1: params.n1 };
    let e = record(&mut failures, energy(&u, grid));
    if let Some(e) = &e {
        finite_or(&mut failures, "energy", e.total);
    }

    let mut report = ValidationReport {
        axis_trace,
        outer_trace,
        velocity_axis_trace,
        velocity_outer_trace,
        energy: e,
        v_hs: None,
        v_t_hs1: None,
        phi_t_h1: None,
        phi_tt_l2: None,
        failures: Vec::new(),
    };
    if !failures.is_empty() {
        report.failures = failures;
        return Ok(report);
    }

    let Some(v) = record(&mut failures, v_from_u(&u, cut, grid)) else {
        report.failures = failures;
        return Ok(report);
    };
    let s = params.s_reg;
    let v_hs = record(&mut failures, sobolev_norm(&v.v, &NormSpec::inhomogeneous(s, Dimension::Four), grid));
    report.v_hs = v_hs.and_then(|x| finite_or(&mut failures, "|v(0)|_Hs", x));
    let v_t_hs1 = record(&mut failures, sobolev_norm(&v.v_t, &NormSpec::inhomogeneous(s - 1.0, Dimension::Four), grid));
    report.v_t_hs1 = v_t_hs1.and_then(|x| finite_or(&mut failures, "|v_t(0)|_Hs-1", x));

    let r = grid.radii();
    let phi_t: Vec<f64> = (0..v.v.len())
        .map(|j| crate::model::aux_kernel(r[j], v.v[j], &cut.point(j)).a_tilde.sqrt() * v.v_t[j])
        .collect();
    let phi_t_h1 = record(&mut failures, sobolev_norm(&phi_t, &NormSpec::homogeneous(1.0, Dimension::Four), grid));
    report.phi_t_h1 = phi_t_h1.and_then(|x| finite_or(&mut failures, "|Phi_t(0)|_H1", x));
    if let Some(v_tt) = record(&mut failures, acceleration_v(&v, cut, grid)) {
        if let Some(phi_tt) = record(&mut failures, phi_second_time_derivative(&v, &v_tt, cut, grid)) {
            let n = record(&mut failures, sobolev_norm(&phi_tt, &NormSpec::homogeneous(0.0, Dimension::Four), grid));
            report.phi_tt_l2 = n.and_then(|x| finite_or(&mut failures, "|Phi_tt(0)|_L2", x));
        }
    }
    report.failures = failures;
    Ok(report)
}
