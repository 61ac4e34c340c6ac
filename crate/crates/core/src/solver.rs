//! Method-of-lines RK4 integration of `v_tt = Δ₄v + rhs_v(v)`.

use serde::{Deserialize, Serialize};

use crate::cutoff::CutoffProfile;
use crate::diagnostics::{diagnose, DiagnosticsReport};
use crate::error::{Error, Result};
use crate::fields::VState;
use crate::grid::{Parity, RadialGrid};
use crate::model::rhs_v_from_parts;
use crate::params::ModelParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    Rk4,
}

/// Quadratic damping ramp `σ(r) = strength · ((r − r₀)/(r_max − r₀))²` over
/// the outer part of the domain, `r₀ = start · r_max`. It acts on the
/// incoming characteristic `v_t + v_r + 3v/(2r)`, which vanishes to leading
/// order on outgoing waves, so the ramp itself reflects little.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sponge {
    pub start: f64,
    pub strength: f64,
}

impl Default for Sponge {
    fn default() -> Self {
        Self { start: 0.9, strength: 10.0 }
    }
}

impl Sponge {
    pub fn profile(&self, grid: &RadialGrid) -> Vec<f64> {
        let r0 = self.start * grid.r_max();
        let width = grid.r_max() - r0;
        grid.sample(|r| if r > r0 { self.strength * ((r - r0) / width).powi(2) } else { 0.0 })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    pub scheme: Scheme,
    pub cfl: f64,
    /// Cap on `sup(|v| + |∇v|)`.
    pub blowup_threshold: f64,
    /// Steps between diagnostics reports.
    pub checkpoint_stride: usize,
    pub sponge: Option<Sponge>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self { scheme: Scheme::Rk4, cfl: 0.4, blowup_threshold: 1e6, checkpoint_stride: 16, sponge: Some(Sponge::default()) }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.cfl > 0.0 && self.cfl <= 0.5) {
            return Err(Error::InvalidParameter { name: "cfl", reason: format!("{} not in (0, 0.5]", self.cfl) });
        }
        if self.checkpoint_stride == 0 {
            return Err(Error::InvalidParameter { name: "checkpoint_stride", reason: "must be positive".into() });
        }
        if !(self.blowup_threshold > 0.0) {
            return Err(Error::InvalidParameter { name: "blowup_threshold", reason: "must be positive".into() });
        }
        Ok(())
    }

    /// Number of steps and step size reaching `t_final` with `dt ≤ cfl·dr`.
    pub fn steps(&self, grid: &RadialGrid, t_final: f64) -> (usize, f64) {
        let n = (t_final / (self.cfl * grid.dr()) * (1.0 - 1e-12)).ceil().max(1.0) as usize;
        (n, t_final / n as f64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TerminalStatus {
    Completed,
    BlowupDetected,
    NanDetected,
}

#[derive(Debug, Clone, PartialEq)]
pub enum StepOutcome {
    Advanced(VState),
    Blowup { sup: f64 },
    Nan,
}

/// External forcing added to `v_tt`: `source(t, out)` fills one value per node.
pub type Source<'a> = &'a (dyn Fn(f64, &mut [f64]) + Sync);

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryRecord<D = DiagnosticsReport> {
    pub times: Vec<f64>,
    pub diagnostics: Vec<D>,
    pub terminal_status: TerminalStatus,
    pub final_state: VState,
    pub steps: usize,
    pub dt: f64,
}

/// Reusable buffers for acceleration evaluations.
#[derive(Debug, Clone)]
pub struct Workspace {
    ext: Vec<f64>,
    d1: Vec<f64>,
    d2: Vec<f64>,
    rhs: Vec<f64>,
    forcing: Vec<f64>,
    damping: Vec<f64>,
}

impl Workspace {
    pub fn new(grid: &RadialGrid, sponge: Option<&Sponge>) -> Self {
        let n = grid.n_cells();
        Self {
            ext: Vec::with_capacity(n + 2 * grid.n_ghost()),
            d1: vec![0.0; n],
            d2: vec![0.0; n],
            rhs: vec![0.0; n],
            forcing: vec![0.0; n],
            damping: sponge.map(|s| s.profile(grid)).unwrap_or_else(|| vec![0.0; n]),
        }
    }

    /// `acc = Δ₄v + rhs_v(v) + source(t) − σ (v_t + v_r + 3v/(2r))`.
    #[allow(clippy::too_many_arguments)]
    fn accelerate(
        &mut self,
        v: &[f64],
        v_t: &[f64],
        t: f64,
        cut: &CutoffProfile,
        grid: &RadialGrid,
        source: Option<Source>,
        acc: &mut [f64],
    ) {
        grid.fill_extended(v, Parity::Even, &mut self.ext);
        grid.derivatives_from_extended(&self.ext, &mut self.d1, &mut self.d2);
        rhs_v_from_parts(v, &self.d1, v_t, cut, grid, &mut self.rhs);
        if let Some(src) = source {
            src(t, &mut self.forcing);
        }
        let r = grid.radii();
        for j in 0..v.len() {
            let mut a = self.d2[j] + 3.0 * self.d1[j] / r[j] + self.rhs[j]
                - self.damping[j] * (v_t[j] + self.d1[j] + 1.5 * v[j] / r[j]);
            if source.is_some() {
                a += self.forcing[j];
            }
            acc[j] = a;
        }
    }

    /// `sup(|v| + |∇_{t,r} v|)` and `sup (1 + r)(|v| + |∇_{t,r} v|)`.
    fn sup_norms(&mut self, v: &[f64], v_t: &[f64], grid: &RadialGrid) -> (f64, f64) {
        grid.fill_extended(v, Parity::Even, &mut self.ext);
        grid.derivatives_from_extended(&self.ext, &mut self.d1, &mut self.d2);
        let mut sup = 0.0f64;
        let mut weighted = 0.0f64;
        for (j, &r) in grid.radii().iter().enumerate() {
            let x = v[j].abs() + v_t[j].hypot(self.d1[j]);
            if x.is_nan() {
                return (f64::NAN, f64::NAN);
            }
            sup = sup.max(x);
            weighted = weighted.max((1.0 + r) * x);
        }
        (sup, weighted)
    }
}

/// `Δ₄v + rhs_v(v)`.
pub fn acceleration_v(v: &VState, cut: &CutoffProfile, grid: &RadialGrid) -> Result<Vec<f64>> {
    grid.check_len(&v.v)?;
    grid.check_len(&v.v_t)?;
    let mut ws = Workspace::new(grid, None);
    let mut acc = vec![0.0; v.v.len()];
    ws.accelerate(&v.v, &v.v_t, v.t, cut, grid, None, &mut acc);
    Ok(acc)
}

/// `‖(1 + r)(|v| + |∇_{t,x} v|)‖_∞` with the spatial derivative from the grid.
pub fn continuation_quantity(v: &VState, grid: &RadialGrid) -> Result<f64> {
    grid.check_len(&v.v)?;
    let mut ws = Workspace::new(grid, None);
    Ok(ws.sup_norms(&v.v, &v.v_t, grid).1)
}

/// Integrator bound to one grid, cutoff profile and configuration.
pub struct Stepper<'a> {
    grid: &'a RadialGrid,
    cut: &'a CutoffProfile,
    config: &'a SolverConfig,
    source: Option<Source<'a>>,
    ws: Workspace,
    k: [Vec<f64>; 8],
    stage_v: Vec<f64>,
    stage_w: Vec<f64>,
}

impl<'a> Stepper<'a> {
    pub fn new(grid: &'a RadialGrid, cut: &'a CutoffProfile, config: &'a SolverConfig, source: Option<Source<'a>>) -> Self {
        let n = grid.n_cells();
        Self {
            grid,
            cut,
            config,
            source,
            ws: Workspace::new(grid, config.sponge.as_ref()),
            k: std::array::from_fn(|_| vec![0.0; n]),
            stage_v: vec![0.0; n],
            stage_w: vec![0.0; n],
        }
    }

    /// One classical RK4 step of size `dt` for the first-order system
    /// `(v, w)' = (w, acc(v, w))`.
    pub fn step(&mut self, state: &VState, dt: f64) -> StepOutcome {
        let n = state.v.len();
        let t = state.t;
        let (v, w) = (&state.v, &state.v_t);
        let [kv1, kw1, kv2, kw2, kv3, kw3, kv4, kw4] = &mut self.k;

        kv1.copy_from_slice(w);
        self.ws.accelerate(v, w, t, self.cut, self.grid, self.source, kw1);

        for j in 0..n {
            self.stage_v[j] = v[j] + 0.5 * dt * kv1[j];
            self.stage_w[j] = w[j] + 0.5 * dt * kw1[j];
        }
        kv2.copy_from_slice(&self.stage_w);
        self.ws.accelerate(&self.stage_v, &self.stage_w, t + 0.5 * dt, self.cut, self.grid, self.source, kw2);

        for j in 0..n {
            self.stage_v[j] = v[j] + 0.5 * dt * kv2[j];
            self.stage_w[j] = w[j] + 0.5 * dt * kw2[j];
        }
        kv3.copy_from_slice(&self.stage_w);
        self.ws.accelerate(&self.stage_v, &self.stage_w, t + 0.5 * dt, self.cut, self.grid, self.source, kw3);

        for j in 0..n {
            self.stage_v[j] = v[j] + dt * kv3[j];
            self.stage_w[j] = w[j] + dt * kw3[j];
        }
        kv4.copy_from_slice(&self.stage_w);
        self.ws.accelerate(&self.stage_v, &self.stage_w, t + dt, self.cut, self.grid, self.source, kw4);

        let c = dt / 6.0;
        let mut next = VState { v: vec![0.0; n], v_t: vec![0.0; n], t: t + dt };
        for j in 0..n {
            next.v[j] = v[j] + c * (kv1[j] + 2.0 * kv2[j] + 2.0 * kv3[j] + kv4[j]);
            next.v_t[j] = w[j] + c * (kw1[j] + 2.0 * kw2[j] + 2.0 * kw3[j] + kw4[j]);
        }
        let (sup, _) = self.ws.sup_norms(&next.v, &next.v_t, self.grid);
        if !sup.is_finite() || !next.is_finite() {
            return StepOutcome::Nan;
        }
        if sup > self.config.blowup_threshold {
            return StepOutcome::Blowup { sup };
        }
        StepOutcome::Advanced(next)
    }
}

/// Single RK4 step with the configured sponge and no forcing.
pub fn step(v: &VState, dt: f64, config: &SolverConfig, cut: &CutoffProfile, grid: &RadialGrid) -> Result<StepOutcome> {
    grid.check_len(&v.v)?;
    grid.check_len(&v.v_t)?;
    config.validate()?;
    if dt > config.cfl * grid.dr() * (1.0 + 1e-12) {
        return Err(Error::InvalidParameter { name: "dt", reason: format!("{dt} exceeds cfl·dr") });
    }
    Ok(Stepper::new(grid, cut, config, None).step(v, dt))
}

/// Integrates to `params.t_final`, reporting diagnostics at `t = 0`, every
/// `checkpoint_stride` steps and at the final time.
pub fn evolve(
    v0: &VState,
    params: &ModelParams,
    config: &SolverConfig,
    cut: &CutoffProfile,
    grid: &RadialGrid,
) -> Result<TrajectoryRecord> {
    evolve_with(v0, params, config, cut, grid, None, |s| diagnose(s, cut, grid, &params.tolerances))
}

/// As [`evolve`] with optional forcing and a custom checkpoint observer.
pub fn evolve_with<D, F>(
    v0: &VState,
    params: &ModelParams,
    config: &SolverConfig,
    cut: &CutoffProfile,
    grid: &RadialGrid,
    source: Option<Source>,
    mut observe: F,
) -> Result<TrajectoryRecord<D>>
where
    F: FnMut(&VState) -> Result<D>,
{
    params.validate()?;
    config.validate()?;
    grid.check_len(&v0.v)?;
    grid.check_len(&v0.v_t)?;
    let (n_steps, dt) = config.steps(grid, params.t_final);
    let mut stepper = Stepper::new(grid, cut, config, source);
    let t0 = v0.t;
    let mut state = v0.clone();
    let mut times = vec![state.t];
    let mut diagnostics = vec![observe(&state)?];
    let mut status = TerminalStatus::Completed;
    let mut taken = 0;
    for i in 1..=n_steps {
        match stepper.step(&state, dt) {
            StepOutcome::Advanced(mut next) => {
                // avoid drift of t from repeated addition
                next.t = t0 + i as f64 * dt;
                state = next;
                taken = i;
            }
            StepOutcome::Blowup { .. } => {
                status = TerminalStatus::BlowupDetected;
                break;
            }
            StepOutcome::Nan => {
                status = TerminalStatus::NanDetected;
                break;
            }
        }
        if i % config.checkpoint_stride == 0 || i == n_steps {
            times.push(state.t);
            diagnostics.push(observe(&state)?);
        }
    }
    Ok(TrajectoryRecord { times, diagnostics, terminal_status: status, final_state: state, steps: taken, dt })
}
