use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use fluxpulse_cli::{output_dir, run, Invocation, Subcommand};

/// Fluxonium readout and gate simulations driven by a JSON config.
#[derive(Debug, Parser)]
#[command(name = "simulate", version)]
struct Args {
    #[arg(value_enum)]
    subcommand: Subcommand,
    /// Run configuration (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Overrides `noise.seed`.
    #[arg(long)]
    seed: Option<u64>,
    /// Overrides `output_dir`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (also settable through FLUXPULSE_WORKERS).
    #[arg(long)]
    workers: Option<usize>,
    /// Neither read nor write the spectrum cache.
    #[arg(long)]
    no_cache: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let inv = Invocation {
        subcommand: args.subcommand,
        config: args.config,
        seed: args.seed,
        out: args.out,
        workers: args.workers,
        no_cache: args.no_cache,
    };
    match run(&inv) {
        Ok(summary) => {
            eprintln!("{}", serde_json::to_string(&summary).unwrap_or_default());
            ExitCode::SUCCESS
        }
        Err(e) => {
            let record = e.record();
            let text = serde_json::to_string(&record).unwrap_or_default();
            eprintln!("{text}");
            if let Some(dir) = output_dir(&inv).filter(|d| d.is_dir()) {
                let _ = std::fs::write(dir.join("error.json"), format!("{text}\n"));
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
