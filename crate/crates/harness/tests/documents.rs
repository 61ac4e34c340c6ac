mod common;

use faddeev_core::analysis::decay::DecayMonitors;
use faddeev_core::diagnostics::DiagnosticsReport;
use faddeev_core::model::EnergyBreakdown;
use faddeev_core::solver::TerminalStatus;
use faddeev_harness::config::DataProfile;
use faddeev_harness::experiment;
use faddeev_harness::summary::{RunSummary, SuiteFamily, SummaryDocument};
use proptest::prelude::*;

const RUN: &str = r#"
kind = "run"
output_dir = "unused"
[model]
n_cells = 256
t_final = 0.25
[data_profile]
name = "gauss-bump"
"#;

#[test]
fn every_kind_emits_schema_valid_documents() {
    let schema = common::schema();
    let dir = tempfile::tempdir().unwrap();
    let kinds = [
        ("run", RUN.to_string()),
        ("validate", RUN.replace("\"run\"", "\"validate\"")),
        (
            "convergence",
            RUN.replace("\"run\"", "\"convergence\"").replace("gauss-bump", "kinetic-kick").replace("256", "1024"),
        ),
        ("sweep", RUN.replace("\"run\"", "\"sweep\"") + "sweep = [1.0, 2.0]\n"),
        (
            "suites",
            "kind = \"suites\"\noutput_dir = \"x\"\nseed = 5\n[model]\nr_max = 16.0\nn_cells = 256\n".to_string(),
        ),
    ];
    for (name, text) in kinds {
        let out = dir.path().join(name);
        let config = common::config(&text, &out);
        let outcome = experiment::execute(&config, None).unwrap_or_else(|e| panic!("{name}: {e}"));
        let written = std::fs::read_to_string(out.join("summary.json")).unwrap();
        common::assert_valid(&schema, &written);
        let back: SummaryDocument = serde_json::from_str(&written).unwrap();
        assert_eq!(back, outcome.summary, "{name}");
    }
}

#[test]
fn suite_subsets_are_schema_valid() {
    let schema = common::schema();
    for family in [SuiteFamily::Sobolev, SuiteFamily::Hardy] {
        let doc = SummaryDocument::Suites(experiment::suites(family, 1, 16.0, 256).unwrap());
        common::assert_valid(&schema, &serde_json::to_string(&doc).unwrap());
    }
}

#[test]
fn validation_failure_maps_to_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let config = common::config(&RUN.replace("\"run\"", "\"validate\""), dir.path());
    let mut summary = experiment::validate(&config).unwrap();
    assert!(summary.passed);
    summary.passed = false;
    assert_eq!(SummaryDocument::Validate(summary).exit_code(), 2);
}

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![-1e300..1e300f64, -1.0..1.0f64, Just(0.0), Just(f64::MIN_POSITIVE), Just(-0.0)]
}

prop_compose! {
    fn monitors()(x in prop::array::uniform6(finite())) -> DecayMonitors {
        DecayMonitors { u_axis: x[0], v_weighted: x[1], phi_weighted: x[2], a_tilde_weighted: x[3], sin_u: x[4], continuation: x[5] }
    }
}

prop_compose! {
    fn run_summary()(
        e in prop::array::uniform5(finite()),
        scalars in prop::array::uniform8(finite()),
        m in monitors(),
        m2 in monitors(),
        charges in prop::collection::vec(-3i64..3, 1..20),
        steps in 0usize..100_000,
        amplitude in prop::option::of(finite()),
        status in prop_oneof![Just(TerminalStatus::Completed), Just(TerminalStatus::BlowupDetected), Just(TerminalStatus::NanDetected)],
    ) -> RunSummary {
        let energy = EnergyBreakdown { kinetic: e[0], gradient: e[1], potential: e[2], total: e[3], tail_estimate: e[4] };
        RunSummary {
            profile: DataProfile::LargeAmp { alpha: scalars[0], energy_factor: scalars[1] },
            amplitude,
            n1: 1,
            r_max: 16.0,
            n_cells: 1024,
            t_final: 5.0,
            dt: scalars[2],
            steps,
            terminal_status: status,
            final_time: scalars[3],
            final_diagnostics: DiagnosticsReport { t: scalars[4], energy, charge: charges[0], charge_raw: scalars[5], monitors: m },
            max_continuation: scalars[6],
            early_continuation: scalars[7],
            monitor_maxima: m2,
            energy_initial: e[3],
            energy_drift: e[0],
            charge_history: charges,
            charge_raw_deviation: e[1],
            manufactured_error: None,
        }
    }
}

proptest! {
    #[test]
    fn run_summary_round_trips_losslessly(summary in run_summary()) {
        let doc = SummaryDocument::Run(summary);
        let text = serde_json::to_string_pretty(&doc).unwrap();
        let back: SummaryDocument = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        // bitwise, including the sign of zero
        prop_assert_eq!(serde_json::to_string_pretty(&back).unwrap(), text);
    }
}
