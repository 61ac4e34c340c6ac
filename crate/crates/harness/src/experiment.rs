//! Orchestration of the experiment kinds.

use std::path::Path;
use std::time::Instant;

use faddeev_core::analysis::inequalities::{
    gaussian_family, inequality_suite_hardy, inequality_suite_radial_sobolev, plateau_family, random_bump_family,
};
use faddeev_core::analysis::validate_initial_data;
use faddeev_core::grid::{l2_norm, Dimension};
use faddeev_core::manufactured::{ConvergenceStudy, Manufactured};
use faddeev_core::model::{u_from_v, v_from_u};
use faddeev_core::solver::{evolve_with, SolverConfig, TerminalStatus, TrajectoryRecord};
use faddeev_core::{diagnostics, CutoffProfile, ModelParams, RadialGrid, VState};
use rayon::prelude::*;

use crate::config::{DataProfile, ExperimentConfig, ExperimentKind};
use crate::error::{HarnessError, Result};
use crate::output::{self, relative_drift};
use crate::registry::{initial_data_registry, InitialData};
use crate::summary::{
    ConvergenceMethod, ConvergenceSummary, RunSummary, RunTiming, SuiteFamily, SuitesSummary, SummaryDocument,
    SweepEntry, SweepSummary, ValidateSummary, EARLY_WINDOW,
};

/// Refinement levels of a convergence study unless given explicitly.
pub const DEFAULT_LEVELS: usize = 3;
/// Grid of the inequality suites started from the command line.
pub const SUITE_GRID: (f64, usize) = (32.0, 2048);
/// Members of the seeded random enrichment of the suite families.
pub const SUITE_RANDOM_MEMBERS: usize = 6;
pub const DILATION_TOLERANCE: f64 = 1e-8;

/// Grid, cutoffs and initial data of one configuration.
pub struct Setup {
    pub grid: RadialGrid,
    pub cut: CutoffProfile,
    pub data: InitialData,
}

pub fn setup(model: &ModelParams, profile: &DataProfile) -> Result<Setup> {
    let grid = RadialGrid::new(model.r_max, model.n_cells)?;
    let cut = CutoffProfile::new(model.n1, &grid, &model.tolerances)?;
    let data = initial_data_registry(profile, model, &cut, &grid)?;
    Ok(Setup { grid, cut, data })
}

/// Lifts the initial data; an axis mismatch here means the grid cannot
/// resolve the plateau, which is a configuration problem.
fn lift(data: &InitialData, model: &ModelParams, cut: &CutoffProfile, grid: &RadialGrid) -> Result<VState> {
    v_from_u(&data.state(model.n1), cut, grid).map_err(|e| match e {
        faddeev_core::Error::SingularAxis { .. } => {
            HarnessError::Config(format!("n_cells = {} is too coarse to resolve the data near the axis: {e}", grid.n_cells()))
        }
        other => other.into(),
    })
}

/// A finished evolution with everything needed to write its artifacts.
pub struct RunResult {
    pub summary: RunSummary,
    pub record: TrajectoryRecord,
    pub initial: VState,
    pub grid: RadialGrid,
    pub cut: CutoffProfile,
    pub wall_time: f64,
}

/// Evolves the profile with full diagnostics at every checkpoint.
pub fn simulate(model: &ModelParams, solver: &SolverConfig, profile: &DataProfile) -> Result<RunResult> {
    let start = Instant::now();
    let Setup { grid, cut, data } = setup(model, profile)?;
    let v0 = lift(&data, model, &cut, &grid)?;
    let tol = &model.tolerances;
    let observe = |s: &VState| diagnostics::diagnose(s, &cut, &grid, tol);
    let (record, manufactured_error) = if let DataProfile::Manufactured = profile {
        let m = Manufactured { n1: model.n1, r_max: model.r_max, t_final: model.t_final };
        let src = m.source(&cut, &grid);
        let rec = evolve_with(&v0, model, solver, &cut, &grid, Some(&src), observe)?;
        let exact = m.exact(rec.final_state.t, &grid);
        let diff: Vec<f64> = rec.final_state.v.iter().zip(&exact.v).map(|(a, b)| a - b).collect();
        let err = l2_norm(&diff, &grid, Dimension::Four)?;
        (rec, Some(err))
    } else {
        (evolve_with(&v0, model, solver, &cut, &grid, None, observe)?, None)
    };
    let summary = summarize(model, profile, data.amplitude, &record, manufactured_error);
    Ok(RunResult { summary, record, initial: v0, grid, cut, wall_time: start.elapsed().as_secs_f64() })
}

fn summarize(
    model: &ModelParams,
    profile: &DataProfile,
    amplitude: Option<f64>,
    rec: &TrajectoryRecord,
    manufactured_error: Option<f64>,
) -> RunSummary {
    let first = &rec.diagnostics[0];
    let e0 = first.energy.total;
    let mut monitors = first.monitors;
    let mut early = 0.0f64;
    let mut drift = 0.0f64;
    let mut deviation = 0.0f64;
    for (t, d) in rec.times.iter().zip(&rec.diagnostics) {
        monitors = monitors.max_with(&d.monitors);
        if *t <= EARLY_WINDOW {
            early = early.max(d.continuation());
        }
        drift = drift.max(relative_drift(d.energy.total, e0));
        deviation = deviation.max((d.charge_raw - d.charge as f64).abs());
    }
    let last = rec.diagnostics.last().unwrap_or(first);
    RunSummary {
        profile: profile.clone(),
        amplitude,
        n1: model.n1,
        r_max: model.r_max,
        n_cells: model.n_cells,
        t_final: model.t_final,
        dt: rec.dt,
        steps: rec.steps,
        terminal_status: rec.terminal_status,
        final_time: rec.final_state.t,
        final_diagnostics: last.clone(),
        max_continuation: monitors.continuation,
        early_continuation: early,
        monitor_maxima: monitors,
        energy_initial: e0,
        energy_drift: drift,
        charge_history: rec.diagnostics.iter().map(|d| d.charge).collect(),
        charge_raw_deviation: deviation,
        manufactured_error,
    }
}

/// Writes the summary, time series, timing and the initial and final
/// snapshots of a run into `dir`.
pub fn write_run(dir: &Path, run: &RunResult) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    let grid = &run.grid;
    for (stem, v) in [("snapshot_initial", &run.initial), ("snapshot_final", &run.record.final_state)] {
        let u = u_from_v(v, &run.cut, grid)?;
        output::write_snapshot(dir, stem, v.t, grid, &[("v", &v.v), ("v_t", &v.v_t), ("u", &u.u), ("u_t", &u.u_t)])?;
    }
    output::write_atomic(&dir.join(output::TIMESERIES_FILE), &output::timeseries_csv(&run.record.diagnostics)?)?;
    output::write_json(&dir.join(output::TIMING_FILE), &RunTiming { wall_time: run.wall_time })?;
    output::write_json(&dir.join(output::SUMMARY_FILE), &SummaryDocument::Run(run.summary.clone()))
}

pub fn validate(config: &ExperimentConfig) -> Result<ValidateSummary> {
    let model = &config.model;
    let profile = &config.data_profile.profile;
    let Setup { grid, cut, data } = setup(model, profile)?;
    let report = validate_initial_data(&data.u0, &data.u1, model, &cut, &grid)?;
    Ok(ValidateSummary {
        profile: profile.clone(),
        amplitude: data.amplitude,
        n1: model.n1,
        r_max: model.r_max,
        n_cells: model.n_cells,
        s_reg: model.s_reg,
        passed: report.passed(),
        report,
    })
}

fn final_state(model: &ModelParams, solver: &SolverConfig, profile: &DataProfile) -> Result<(VState, RadialGrid)> {
    let Setup { grid, cut, data } = setup(model, profile)?;
    let v0 = lift(&data, model, &cut, &grid)?;
    let rec = evolve_with(&v0, model, solver, &cut, &grid, None, |_| Ok(()))?;
    if rec.terminal_status != TerminalStatus::Completed {
        return Err(faddeev_core::Error::Diverged { status: format!("{:?}", rec.terminal_status) }.into());
    }
    Ok((rec.final_state, grid))
}

/// Refinement study with `levels ≥ 3`: the finest spatial level and the
/// temporal study use `model.n_cells`.
pub fn convergence(config: &ExperimentConfig, levels: usize) -> Result<ConvergenceSummary> {
    if levels < 3 {
        return Err(HarnessError::Config(format!("convergence needs at least 3 levels, got {levels}")));
    }
    let model = &config.model;
    let solver = &config.solver;
    let profile = &config.data_profile.profile;
    let n = model.n_cells;
    let spatial_cells: Vec<usize> = (0..levels).rev().map(|i| n >> i).collect();
    if spatial_cells[0] << (levels - 1) != n {
        return Err(HarnessError::Config(format!("n_cells = {n} is not divisible by 2^{}", levels - 1)));
    }
    let temporal_cfls: Vec<f64> = (0..levels).map(|i| solver.cfl / (1u64 << i) as f64).collect();
    let (method, spatial, temporal) = if let DataProfile::Manufactured = profile {
        let m = Manufactured { n1: model.n1, r_max: model.r_max, t_final: model.t_final };
        let spatial = m.spatial_study(&spatial_cells, solver.cfl / 8.0)?;
        let temporal = m.temporal_study(n, &temporal_cfls)?;
        (ConvergenceMethod::Manufactured, spatial, temporal)
    } else {
        // the L² norm of the final lift is a smooth functional of the solution
        let mut steps = Vec::new();
        let mut values = Vec::new();
        for &cells in &spatial_cells {
            let m = ModelParams { n_cells: cells, ..model.clone() };
            let (v, grid) = final_state(&m, solver, profile)?;
            steps.push(grid.dr());
            values.push(l2_norm(&v.v, &grid, Dimension::Four)?);
        }
        let diffs = values.windows(2).map(|w| (w[0] - w[1]).abs()).collect();
        let spatial = ConvergenceStudy::new(steps[..levels - 1].to_vec(), diffs);

        let mut states = Vec::new();
        let mut grid = None;
        for &cfl in &temporal_cfls {
            let m = ModelParams { cfl, ..model.clone() };
            let s = SolverConfig { cfl, ..solver.clone() };
            let (v, g) = final_state(&m, &s, profile)?;
            states.push(v);
            grid = Some(g);
        }
        let grid = grid.expect("at least three levels");
        let mut errors = Vec::new();
        for pair in states.windows(2) {
            let diff: Vec<f64> = pair[0].v.iter().zip(&pair[1].v).map(|(a, b)| a - b).collect();
            errors.push(l2_norm(&diff, &grid, Dimension::Four)?);
        }
        let dts = temporal_cfls[..levels - 1].iter().map(|c| c * grid.dr()).collect();
        (ConvergenceMethod::SelfConvergence, spatial, ConvergenceStudy::new(dts, errors))
    };
    Ok(ConvergenceSummary {
        profile: profile.clone(),
        method,
        levels,
        spatial_cells,
        spatial,
        temporal_cfls,
        temporal,
    })
}

/// Runs the inequality suites on the named family.
pub fn suites(family: SuiteFamily, seed: u64, r_max: f64, n_cells: usize) -> Result<SuitesSummary> {
    let grid = RadialGrid::new(r_max, n_cells)?;
    let mut base = gaussian_family();
    base.extend(plateau_family());
    let extra = random_bump_family(seed, SUITE_RANDOM_MEMBERS);
    let sobolev = match family {
        SuiteFamily::Sobolev | SuiteFamily::All => Some(inequality_suite_radial_sobolev(&base, &extra, &grid)?),
        SuiteFamily::Hardy => None,
    };
    let hardy = match family {
        SuiteFamily::Hardy | SuiteFamily::All => Some(inequality_suite_hardy(&base, &extra, &grid)?),
        SuiteFamily::Sobolev => None,
    };
    let passed = sobolev.as_ref().is_none_or(|s| s.passed(DILATION_TOLERANCE))
        && hardy.as_ref().is_none_or(|h| h.passed(DILATION_TOLERANCE));
    Ok(SuitesSummary { family, seed, r_max, n_cells, dilation_tolerance: DILATION_TOLERANCE, sobolev, hardy, passed })
}

/// Runs every value of the sweep in parallel, each into its own directory.
pub fn sweep(config: &ExperimentConfig) -> Result<SweepSummary> {
    let base = &config.data_profile.profile;
    let parameter = base
        .sweep_parameter()
        .ok_or_else(|| HarnessError::Config(format!("profile `{}` has no parameter to sweep", base.name())))?;
    let runs = config
        .data_profile
        .sweep
        .par_iter()
        .enumerate()
        .map(|(i, &value)| {
            let profile = base.with_sweep_value(value)?;
            let run = simulate(&config.model, &config.solver, &profile)?;
            let output = format!("sweep_{i:03}");
            write_run(&config.output_dir.join(&output), &run)?;
            Ok(SweepEntry { value, output, summary: run.summary })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepSummary { profile: base.name().to_string(), parameter: parameter.to_string(), runs })
}

/// Result of [`execute`].
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub summary: SummaryDocument,
    pub exit_code: i32,
}

/// Runs the configured experiment and writes its artifacts into
/// `config.output_dir`. `levels` applies to convergence studies.
pub fn execute(config: &ExperimentConfig, levels: Option<usize>) -> Result<Outcome> {
    config.validate()?;
    config.prepare_output_dir()?;
    let dir = &config.output_dir;
    let summary = match config.kind {
        ExperimentKind::Run => {
            let run = simulate(&config.model, &config.solver, &config.data_profile.profile)?;
            write_run(dir, &run)?;
            SummaryDocument::Run(run.summary)
        }
        ExperimentKind::Validate => SummaryDocument::Validate(validate(config)?),
        ExperimentKind::Convergence => SummaryDocument::Convergence(convergence(config, levels.unwrap_or(DEFAULT_LEVELS))?),
        ExperimentKind::Sweep => SummaryDocument::Sweep(sweep(config)?),
        ExperimentKind::Suites => {
            SummaryDocument::Suites(suites(SuiteFamily::All, config.seed, config.model.r_max, config.model.n_cells)?)
        }
    };
    if config.kind != ExperimentKind::Run {
        output::write_json(&dir.join(output::SUMMARY_FILE), &summary)?;
    }
    Ok(Outcome { exit_code: summary.exit_code(), summary })
}
