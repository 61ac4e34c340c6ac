use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use faddeev_harness::config::{ExperimentConfig, ExperimentKind, OUTPUT_DIR_ENV, THREADS_ENV};
use faddeev_harness::error::{exit, HarnessError, Result};
use faddeev_harness::experiment::{self, SUITE_GRID};
use faddeev_harness::output::{write_json, SUMMARY_FILE};
use faddeev_harness::summary::{SuiteFamily, SummaryDocument};
use faddeev_harness::report;

#[derive(Parser)]
#[command(name = "faddeev", version, about = "Simulations and checks for the equivariant Faddeev model")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a config file.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
    /// Check the configured initial data without evolving it.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
    /// Refinement study in space and time.
    Converge {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = experiment::DEFAULT_LEVELS)]
        levels: usize,
    },
    /// Radial Sobolev and Hardy inequality suites.
    Suites {
        /// sobolev, hardy or all
        #[arg(long)]
        family: SuiteFamily,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Result directory; defaults to $FADDEEV_OUTPUT_DIR, then ./suites.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print a result directory in readable form.
    Report {
        #[arg(long)]
        input: PathBuf,
    },
}

fn configure_threads() -> Result<()> {
    let Some(value) = std::env::var_os(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = value
        .to_str()
        .and_then(|s| s.parse().ok())
        .filter(|&n| n > 0)
        .ok_or_else(|| HarnessError::Config(format!("{THREADS_ENV} must be a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| HarnessError::Config(format!("cannot start {threads} threads: {e}")))
}

fn run_config(path: &Path, kind: Option<ExperimentKind>, levels: Option<usize>) -> Result<i32> {
    let mut config = ExperimentConfig::load(path)?;
    if let Some(kind) = kind {
        config.kind = kind;
        config.validate()?;
    }
    let outcome = experiment::execute(&config, levels)?;
    print!("{}", report::render(&outcome.summary));
    println!("results in {}", config.output_dir.display());
    Ok(outcome.exit_code)
}

fn dispatch(cli: Cli) -> Result<i32> {
    configure_threads()?;
    match cli.command {
        Command::Run { config } => run_config(&config, None, None),
        Command::Validate { config } => run_config(&config, Some(ExperimentKind::Validate), None),
        Command::Converge { config, levels } => run_config(&config, Some(ExperimentKind::Convergence), Some(levels)),
        Command::Suites { family, seed, output } => {
            let dir = output
                .or_else(|| std::env::var_os(OUTPUT_DIR_ENV).map(PathBuf::from))
                .unwrap_or_else(|| PathBuf::from("suites"));
            std::fs::create_dir_all(&dir).map_err(|e| HarnessError::io(&dir, e))?;
            let (r_max, n_cells) = SUITE_GRID;
            let doc = SummaryDocument::Suites(experiment::suites(family, seed, r_max, n_cells)?);
            write_json(&dir.join(SUMMARY_FILE), &doc)?;
            print!("{}", report::render(&doc));
            println!("results in {}", dir.display());
            Ok(doc.exit_code())
        }
        Command::Report { input } => {
            print!("{}", report::render(&report::load(&input)?));
            Ok(exit::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // usage errors share the config-error code; help and version succeed
            return ExitCode::from(if e.use_stderr() { exit::CONFIG as u8 } else { exit::SUCCESS as u8 });
        }
    };
    let code = match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    if code == exit::BLOWUP {
        eprintln!("stopped: blow-up threshold exceeded");
    } else if code == exit::NAN {
        eprintln!("stopped: non-finite values detected");
    } else if code == exit::VALIDATION {
        eprintln!("validation failed");
    }
    ExitCode::from(code as u8)
}
