//! Machine-readable summary documents, one per experiment kind.

use faddeev_core::analysis::decay::DecayMonitors;
use faddeev_core::analysis::inequalities::{HardySuiteReport, SobolevSuiteReport};
use faddeev_core::analysis::validation::ValidationReport;
use faddeev_core::diagnostics::DiagnosticsReport;
use faddeev_core::manufactured::ConvergenceStudy;
use faddeev_core::solver::TerminalStatus;
use serde::{Deserialize, Serialize};

use crate::config::DataProfile;
use crate::error::exit;

/// End of the window whose continuation maximum sets the growth reference.
pub const EARLY_WINDOW: f64 = 1.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SummaryDocument {
    Run(RunSummary),
    Validate(ValidateSummary),
    Convergence(ConvergenceSummary),
    Sweep(SweepSummary),
    Suites(SuitesSummary),
}

impl SummaryDocument {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Run(r) => r.exit_code(),
            Self::Validate(v) if !v.passed => exit::VALIDATION,
            Self::Suites(s) if !s.passed => exit::VALIDATION,
            Self::Sweep(s) => s.runs.iter().map(|e| e.summary.exit_code()).max().unwrap_or(exit::SUCCESS),
            _ => exit::SUCCESS,
        }
    }
}

/// Outcome of one evolution. Wall-clock time is kept out of this document
/// so that identical inputs give identical bytes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub profile: DataProfile,
    /// Amplitude chosen by the large-amplitude family.
    pub amplitude: Option<f64>,
    pub n1: u32,
    pub r_max: f64,
    pub n_cells: usize,
    pub t_final: f64,
    pub dt: f64,
    pub steps: usize,
    pub terminal_status: TerminalStatus,
    pub final_time: f64,
    pub final_diagnostics: DiagnosticsReport,
    pub max_continuation: f64,
    /// Largest continuation quantity over checkpoints with `t ≤ 1`.
    pub early_continuation: f64,
    pub monitor_maxima: DecayMonitors,
    pub energy_initial: f64,
    /// Largest relative energy change over the checkpoints.
    pub energy_drift: f64,
    pub charge_history: Vec<i64>,
    /// Largest distance of the raw charge ratio from its rounded value.
    pub charge_raw_deviation: f64,
    /// L² distance to the exact lift at the final time, forced runs only.
    pub manufactured_error: Option<f64>,
}

impl RunSummary {
    pub fn exit_code(&self) -> i32 {
        match self.terminal_status {
            TerminalStatus::Completed => exit::SUCCESS,
            TerminalStatus::BlowupDetected => exit::BLOWUP,
            TerminalStatus::NanDetected => exit::NAN,
        }
    }

    /// Charge integral and never changed.
    pub fn charge_conserved(&self, tol: f64) -> bool {
        self.charge_raw_deviation < tol && self.charge_history.windows(2).all(|w| w[0] == w[1])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunTiming {
    pub wall_time: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidateSummary {
    pub profile: DataProfile,
    pub amplitude: Option<f64>,
    pub n1: u32,
    pub r_max: f64,
    pub n_cells: usize,
    pub s_reg: f64,
    pub passed: bool,
    pub report: ValidationReport,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConvergenceMethod {
    /// Errors against the exact solution of the forced problem.
    Manufactured,
    /// Differences of successive refinements.
    SelfConvergence,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceSummary {
    pub profile: DataProfile,
    pub method: ConvergenceMethod,
    pub levels: usize,
    pub spatial_cells: Vec<usize>,
    pub spatial: ConvergenceStudy,
    pub temporal_cfls: Vec<f64>,
    pub temporal: ConvergenceStudy,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub value: f64,
    /// Run directory relative to the sweep output directory.
    pub output: String,
    pub summary: RunSummary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub profile: String,
    pub parameter: String,
    pub runs: Vec<SweepEntry>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteFamily {
    Sobolev,
    Hardy,
    All,
}

impl std::str::FromStr for SuiteFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "sobolev" => Ok(Self::Sobolev),
            "hardy" => Ok(Self::Hardy),
            "all" => Ok(Self::All),
            other => Err(format!("unknown suite family `{other}` (expected sobolev, hardy or all)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuitesSummary {
    pub family: SuiteFamily,
    pub seed: u64,
    pub r_max: f64,
    pub n_cells: usize,
    pub dilation_tolerance: f64,
    pub sobolev: Option<SobolevSuiteReport>,
    pub hardy: Option<HardySuiteReport>,
    pub passed: bool,
}
