use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::mpsc;
use std::time::Duration;

use apolar::cli::{self, Experiment, ExperimentConfig, Format, Report};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "apolar", version, about = "Experiments on self-associated point sets over prime fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment; exit status 0 iff every check passes.
    Run {
        #[command(subcommand)]
        experiment: Experiment,
        /// Field characteristic (default 2147483647; 101 for ci-demo).
        #[arg(long, global = true)]
        prime: Option<u64>,
        #[arg(long, global = true, default_value_t = 0)]
        seed: u64,
        #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
        #[arg(long, global = true)]
        threads: Option<usize>,
        #[arg(long, global = true)]
        timeout_secs: Option<u64>,
    },
}

fn render(config: &ExperimentConfig, report: &Report) -> String {
    match (config.format, &config.experiment) {
        (Format::Json, _) => serde_json::to_string_pretty(&report.to_json()).expect("report serializes") + "\n",
        (Format::Text, Experiment::DumpIdeal { .. }) if report.passed => {
            format!("# {} prime={} seed={}\n{}", report.experiment, report.prime, report.seed, report.display)
        }
        (Format::Text, _) => report.to_text(),
    }
}

fn main() -> ExitCode {
    let Command::Run {
        experiment,
        prime,
        seed,
        format,
        out,
        threads,
        timeout_secs,
    } = Cli::parse().command;
    let config = ExperimentConfig {
        experiment,
        prime,
        seed,
        format,
        out,
        threads,
        timeout_secs,
    };
    if let Some(t) = config.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let secs = config.timeout_secs();
    let (tx, rx) = mpsc::channel();
    let worker = config.clone();
    std::thread::spawn(move || {
        let _ = tx.send(cli::run(&worker));
    });
    let (report, code) = match rx.recv_timeout(Duration::from_secs(secs)) {
        Ok(r) => {
            let code = if r.passed { 0 } else { 1 };
            (r, code)
        }
        Err(_) => (cli::timeout_report(&config, secs), 3),
    };
    let text = render(&config, &report);
    match &config.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if let Some(f) = &report.failure {
        eprintln!(
            "failed: {}::{} {}: expected {}, got {}",
            f.module, f.operation, f.what, f.expected, f.actual
        );
    }
    ExitCode::from(code)
}
