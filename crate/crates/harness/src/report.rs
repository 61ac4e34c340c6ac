//! Human-readable rendering of a result directory.

use std::fmt::Write;
use std::path::Path;

use faddeev_core::manufactured::ConvergenceStudy;

use crate::error::Result;
use crate::output::{read_json, SUMMARY_FILE};
use crate::summary::{RunSummary, SummaryDocument};

pub fn load(dir: &Path) -> Result<SummaryDocument> {
    read_json(&dir.join(SUMMARY_FILE))
}

fn run_lines(out: &mut String, r: &RunSummary) {
    let d = &r.final_diagnostics;
    let _ = writeln!(out, "profile          {} (n1 = {})", r.profile.name(), r.n1);
    if let Some(a) = r.amplitude {
        let _ = writeln!(out, "amplitude        {a:.6}");
    }
    let _ = writeln!(out, "grid             r_max = {}, n_cells = {}, dt = {:.3e}", r.r_max, r.n_cells, r.dt);
    let _ = writeln!(out, "status           {:?} at t = {} after {} steps", r.terminal_status, r.final_time, r.steps);
    let _ = writeln!(out, "energy           {:.12} (max relative drift {:.3e})", r.energy_initial, r.energy_drift);
    let _ = writeln!(
        out,
        "charge           {} (raw deviation {:.2e}, constant: {})",
        d.charge,
        r.charge_raw_deviation,
        r.charge_history.windows(2).all(|w| w[0] == w[1])
    );
    let _ = writeln!(
        out,
        "continuation     max {:.6e}, max on t <= 1 {:.6e}",
        r.max_continuation, r.early_continuation
    );
    let m = &r.monitor_maxima;
    let _ = writeln!(
        out,
        "monitor maxima   u_axis {:.3e}  v {:.3e}  phi {:.3e}  a_tilde {:.3e}  sin_u {:.3e}",
        m.u_axis, m.v_weighted, m.phi_weighted, m.a_tilde_weighted, m.sin_u
    );
    if let Some(e) = r.manufactured_error {
        let _ = writeln!(out, "exact-solution error {e:.3e}");
    }
}

fn study_lines(out: &mut String, name: &str, s: &ConvergenceStudy) {
    let _ = writeln!(out, "{name}: fitted order {:.3}", s.fitted_order);
    for (h, e) in s.steps.iter().zip(&s.errors) {
        let _ = writeln!(out, "  step {h:.4e}  error {e:.4e}");
    }
}

pub fn render(doc: &SummaryDocument) -> String {
    let mut out = String::new();
    match doc {
        SummaryDocument::Run(r) => run_lines(&mut out, r),
        SummaryDocument::Validate(v) => {
            let _ = writeln!(out, "validation of {} on n_cells = {}: {}", v.profile.name(), v.n_cells, if v.passed { "passed" } else { "FAILED" });
            for f in &v.report.failures {
                let _ = writeln!(out, "  {f}");
            }
            if let Some(e) = &v.report.energy {
                let _ = writeln!(out, "energy {:.12}", e.total);
            }
            if let Some(x) = v.report.phi_time_norms() {
                let _ = writeln!(out, "|Phi_t(0)|_H1 + |Phi_tt(0)|_L2 = {x:.6e}");
            }
        }
        SummaryDocument::Convergence(c) => {
            let _ = writeln!(out, "convergence of {} ({:?}, {} levels)", c.profile.name(), c.method, c.levels);
            study_lines(&mut out, "space", &c.spatial);
            study_lines(&mut out, "time", &c.temporal);
        }
        SummaryDocument::Sweep(s) => {
            let _ = writeln!(out, "sweep of {} over {}", s.profile, s.parameter);
            for e in &s.runs {
                let r = &e.summary;
                let _ = writeln!(
                    out,
                    "  {} = {:<10} {:?}  drift {:.2e}  continuation {:.3e}  ({})",
                    s.parameter, e.value, r.terminal_status, r.energy_drift, r.max_continuation, e.output
                );
            }
        }
        SummaryDocument::Suites(s) => {
            let _ = writeln!(out, "inequality suites ({:?}, seed {}): {}", s.family, s.seed, if s.passed { "passed" } else { "FAILED" });
            if let Some(sob) = &s.sobolev {
                for fam in [&sob.sigma_one, &sob.sigma_three_halves, &sob.weighted_h1] {
                    let _ = writeln!(out, "  {:<32} base {:.6}  fitted {:.6}", fam.name, fam.base_constant, fam.fitted_constant);
                }
                let _ = writeln!(out, "  dilation defect {:.2e}", sob.dilation_defect);
            }
            if let Some(h) = &s.hardy {
                let _ = writeln!(out, "  {:<32} base {:.6}  fitted {:.6}", h.ratios.name, h.ratios.base_constant, h.ratios.fitted_constant);
                let _ = writeln!(out, "  dilation defect {:.2e}", h.dilation_defect);
            }
        }
    }
    out
}
