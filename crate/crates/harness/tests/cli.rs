mod common;

use std::path::Path;
use std::process::Command;

use faddeev_harness::output::{read_json, SUMMARY_FILE};
use faddeev_harness::SummaryDocument;

fn faddeev(args: &[&str], cwd: &Path) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_faddeev"))
        .args(args)
        .current_dir(cwd)
        .env_remove("FADDEEV_OUTPUT_DIR")
        .env_remove("FADDEEV_THREADS")
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

const ZERO: &str = r#"
kind = "run"
output_dir = "zero"
[model]
n1 = 0
r_max = 8.0
n_cells = 128
t_final = 0.5
[data_profile]
name = "plateau"
"#;

#[test]
fn zero_data_run_has_all_zero_diagnostics() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = common::write_config(dir.path(), "zero.toml", ZERO);
    let (code, stdout, _) = faddeev(&["run", "--config", cfg.to_str().unwrap()], dir.path());
    assert_eq!(code, 0, "{stdout}");
    let text = std::fs::read_to_string(dir.path().join("zero").join(SUMMARY_FILE)).unwrap();
    common::assert_valid(&common::schema(), &text);
    let SummaryDocument::Run(r) = serde_json::from_str(&text).unwrap() else { panic!("not a run summary") };
    let d = &r.final_diagnostics;
    assert_eq!(d.energy.total, 0.0);
    assert_eq!(d.charge, 0);
    assert_eq!(r.max_continuation, 0.0);
    assert_eq!(r.energy_drift, 0.0);
    for f in ["diagnostics.csv", "timing.json", "snapshot_final.bin", "snapshot_final.json", "snapshot_initial.bin"] {
        assert!(dir.path().join("zero").join(f).exists(), "{f}");
    }
    let csv = std::fs::read_to_string(dir.path().join("zero/diagnostics.csv")).unwrap();
    assert!(csv.starts_with("t,energy,"));
    assert_eq!(csv.lines().count(), 1 + r.charge_history.len());
}

#[test]
fn validate_plateau_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let text = "kind = \"run\"\noutput_dir = \"v\"\n[model]\nn_cells = 512\n[data_profile]\nname = \"plateau\"\n";
    let cfg = common::write_config(dir.path(), "p.toml", text);
    let (code, stdout, stderr) = faddeev(&["validate", "--config", cfg.to_str().unwrap()], dir.path());
    assert_eq!(code, 0, "{stdout}{stderr}");
    assert!(stdout.contains("passed"));
    let doc: SummaryDocument = read_json(&dir.path().join("v").join(SUMMARY_FILE)).unwrap();
    assert!(matches!(doc, SummaryDocument::Validate(ref v) if v.passed));
}

#[test]
fn converge_on_manufactured_profile_reaches_fourth_order_in_time() {
    let dir = tempfile::tempdir().unwrap();
    let text = r#"
kind = "convergence"
output_dir = "c"
[model]
r_max = 8.0
n_cells = 256
[solver]
sponge = { start = 0.9, strength = 0.0 }
[data_profile]
name = "manufactured"
"#;
    let cfg = common::write_config(dir.path(), "c.toml", text);
    let (code, stdout, _) = faddeev(&["converge", "--config", cfg.to_str().unwrap(), "--levels", "3"], dir.path());
    assert_eq!(code, 0, "{stdout}");
    let SummaryDocument::Convergence(c) = read_json(&dir.path().join("c").join(SUMMARY_FILE)).unwrap() else {
        panic!("not a convergence summary")
    };
    assert!(c.temporal.fitted_order >= 3.5, "{c:?}");
    assert!(c.spatial.fitted_order >= 3.5, "{c:?}");
    let (code, report, _) = faddeev(&["report", "--input", "c"], dir.path());
    assert_eq!(code, 0);
    assert!(report.contains("fitted order"));
}

#[test]
fn config_errors_exit_with_code_five() {
    let dir = tempfile::tempdir().unwrap();
    let bad = common::write_config(dir.path(), "bad.toml", &ZERO.replace("plateau", "sombrero"));
    assert_eq!(faddeev(&["run", "--config", bad.to_str().unwrap()], dir.path()).0, 5);
    assert_eq!(faddeev(&["run", "--config", "missing.toml"], dir.path()).0, 5);
    assert_eq!(faddeev(&["suites", "--family", "nope"], dir.path()).0, 5);
    assert_eq!(faddeev(&["frobnicate"], dir.path()).0, 5);
    let levels = common::write_config(dir.path(), "z.toml", ZERO);
    assert_eq!(faddeev(&["converge", "--config", levels.to_str().unwrap(), "--levels", "2"], dir.path()).0, 5);
    assert_eq!(faddeev(&["--help"], dir.path()).0, 0);
}

#[test]
fn blowup_exits_with_code_three() {
    let dir = tempfile::tempdir().unwrap();
    let text = "kind = \"run\"\noutput_dir = \"b\"\n[model]\nn_cells = 256\n[solver]\nblowup_threshold = 1.0\n[data_profile]\nname = \"gauss-bump\"\n";
    let cfg = common::write_config(dir.path(), "b.toml", text);
    let (code, _, stderr) = faddeev(&["run", "--config", cfg.to_str().unwrap()], dir.path());
    assert_eq!(code, 3);
    assert!(stderr.contains("blow-up"));
    let SummaryDocument::Run(r) = read_json(&dir.path().join("b").join(SUMMARY_FILE)).unwrap() else { panic!() };
    assert_eq!(r.terminal_status, faddeev_core::solver::TerminalStatus::BlowupDetected);
}

#[test]
fn output_dir_override_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = common::write_config(dir.path(), "zero.toml", &ZERO.replace("n1 = 0", "n1 = 1").replace("8.0", "16.0"));
    let run = |out: &str, threads: &str| {
        let status = Command::new(env!("CARGO_BIN_EXE_faddeev"))
            .args(["run", "--config", cfg.to_str().unwrap()])
            .current_dir(dir.path())
            .env("FADDEEV_OUTPUT_DIR", out)
            .env("FADDEEV_THREADS", threads)
            .output()
            .unwrap()
            .status;
        assert!(status.success());
        std::fs::read(dir.path().join(out).join(SUMMARY_FILE)).unwrap()
    };
    let a = run("first", "1");
    let b = run("second", "2");
    assert_eq!(a, b);
    assert!(!dir.path().join("zero").exists());
}

#[test]
fn sweep_writes_one_directory_per_value() {
    let dir = tempfile::tempdir().unwrap();
    let text = r#"
kind = "sweep"
output_dir = "s"
[model]
n_cells = 256
t_final = 0.25
[data_profile]
name = "kinetic-kick"
sweep = [0.0, 1.0]
"#;
    let cfg = common::write_config(dir.path(), "s.toml", text);
    let (code, stdout, _) = faddeev(&["run", "--config", cfg.to_str().unwrap()], dir.path());
    assert_eq!(code, 0, "{stdout}");
    let text = std::fs::read_to_string(dir.path().join("s").join(SUMMARY_FILE)).unwrap();
    common::assert_valid(&common::schema(), &text);
    for sub in ["sweep_000", "sweep_001"] {
        assert!(dir.path().join("s").join(sub).join(SUMMARY_FILE).exists());
    }
}
