//! Forced problems with the exact solution `v*(t, r) = cos(t) e^{−r²}` and
//! refinement studies built on them.

use serde::{Deserialize, Serialize};

use crate::cutoff::{CutoffPoint, CutoffProfile};
use crate::error::{Error, Result};
use crate::fields::VState;
use crate::grid::{l2_norm, Dimension, RadialGrid};
use crate::model::rhs_v_point;
use crate::params::{ModelParams, Tolerances};
use crate::solver::{evolve_with, SolverConfig, TerminalStatus};

/// `v*(t, r) = cos(t) e^{−r²}` driven by `source = v*_tt − Δ₄v* − rhs_v(v*)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Manufactured {
    pub n1: u32,
    pub r_max: f64,
    pub t_final: f64,
}

impl Default for Manufactured {
    fn default() -> Self {
        Self { n1: 1, r_max: 8.0, t_final: 1.0 }
    }
}

/// `(v, v_r, v_t, v_tt − Δ₄v)` of the exact solution.
fn exact_point(t: f64, r: f64) -> (f64, f64, f64, f64) {
    let g = (-r * r).exp();
    let (c, s) = (t.cos(), t.sin());
    (c * g, -2.0 * r * c * g, -s * g, -c * g - c * (4.0 * r * r - 8.0) * g)
}

impl Manufactured {
    pub fn exact(&self, t: f64, grid: &RadialGrid) -> VState {
        VState { v: grid.sample(|r| exact_point(t, r).0), v_t: grid.sample(|r| exact_point(t, r).2), t }
    }

    /// The forcing as a solver source closure.
    pub fn source<'a>(&self, cut: &'a CutoffProfile, grid: &'a RadialGrid) -> impl Fn(f64, &mut [f64]) + Sync + 'a {
        let points: Vec<(f64, CutoffPoint)> = grid.radii().iter().enumerate().map(|(j, &r)| (r, cut.point(j))).collect();
        move |t, out| {
            for (o, (r, c)) in out.iter_mut().zip(&points) {
                let (v, v_r, v_t, box_v) = exact_point(t, *r);
                *o = box_v - rhs_v_point(*r, v, v_r, v_t, c);
            }
        }
    }

    /// Evolves the forced problem without sponge; returns the final state.
    pub fn solve(&self, n_cells: usize, cfl: f64) -> Result<VState> {
        let grid = RadialGrid::new(self.r_max, n_cells)?;
        let tol = Tolerances::default();
        let cut = CutoffProfile::new(self.n1, &grid, &tol)?;
        let params = ModelParams { n1: self.n1, r_max: self.r_max, n_cells, t_final: self.t_final, ..Default::default() };
        let config = SolverConfig { cfl, checkpoint_stride: usize::MAX, sponge: None, ..Default::default() };
        let src = self.source(&cut, &grid);
        let rec = evolve_with(&self.exact(0.0, &grid), &params, &config, &cut, &grid, Some(&src), |_| Ok(()))?;
        if rec.terminal_status != TerminalStatus::Completed {
            return Err(Error::Diverged { status: format!("{:?}", rec.terminal_status) });
        }
        Ok(rec.final_state)
    }

    /// Error against the exact solution at `t_final` under grid refinement
    /// with `dt = cfl·dr`; a small `cfl` keeps the time error negligible.
    pub fn spatial_study(&self, levels: &[usize], cfl: f64) -> Result<ConvergenceStudy> {
        let mut steps = Vec::new();
        let mut errors = Vec::new();
        for &n in levels {
            let grid = RadialGrid::new(self.r_max, n)?;
            let v = self.solve(n, cfl)?;
            let exact = self.exact(self.t_final, &grid);
            let diff: Vec<f64> = v.v.iter().zip(&exact.v).map(|(a, b)| a - b).collect();
            steps.push(grid.dr());
            errors.push(l2_norm(&diff, &grid, Dimension::Four)?);
        }
        Ok(ConvergenceStudy::new(steps, errors))
    }

    /// Richardson self-convergence in `dt` on one grid: differences of
    /// successive solutions with `cfl` halved each level.
    pub fn temporal_study(&self, n_cells: usize, cfls: &[f64]) -> Result<ConvergenceStudy> {
        if cfls.len() < 3 {
            return Err(Error::InvalidParameter { name: "levels", reason: "need at least three".into() });
        }
        let grid = RadialGrid::new(self.r_max, n_cells)?;
        let runs = cfls.iter().map(|&c| self.solve(n_cells, c)).collect::<Result<Vec<_>>>()?;
        let mut steps = Vec::new();
        let mut errors = Vec::new();
        for (pair, &c) in runs.windows(2).zip(cfls) {
            let diff: Vec<f64> = pair[0].v.iter().zip(&pair[1].v).map(|(a, b)| a - b).collect();
            steps.push(c * grid.dr());
            errors.push(l2_norm(&diff, &grid, Dimension::Four)?);
        }
        Ok(ConvergenceStudy::new(steps, errors))
    }
}

/// Errors against step sizes with the least-squares slope in log-log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceStudy {
    pub steps: Vec<f64>,
    pub errors: Vec<f64>,
    /// Order between consecutive levels.
    pub local_orders: Vec<f64>,
    pub fitted_order: f64,
}

impl ConvergenceStudy {
    pub fn new(steps: Vec<f64>, errors: Vec<f64>) -> Self {
        let local_orders = steps
            .windows(2)
            .zip(errors.windows(2))
            .map(|(h, e)| (e[0] / e[1]).ln() / (h[0] / h[1]).ln())
            .collect();
        let fitted_order = log_slope(&steps, &errors);
        Self { steps, errors, local_orders, fitted_order }
    }
}

fn log_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}
