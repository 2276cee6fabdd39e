use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use talenti_cli::commands::{self, CmdResult, Status};
use talenti_cli::RunConfig;

#[derive(Parser)]
#[command(name = "talenti", version, about = "Weighted rearrangement and comparison checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Common {
    /// JSON run configuration
    #[arg(long)]
    config: PathBuf,
    /// artifact destination (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,
    /// overrides `trials` from the config
    #[arg(long)]
    trials: Option<u64>,
    /// overrides `seed` from the config
    #[arg(long)]
    seed: Option<u64>,
    /// suppress the summary line on stderr
    #[arg(long)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Drift condition on the drift g = -w' - w V1'
    CheckWeights(Common),
    /// Random polygons against their right rearrangements
    Isoperimetry(Common),
    /// Finite-difference solve on the configured domain
    Solve(Common),
    /// Tabulate the symmetrized solution v
    Symmetrize(Common),
    /// Pointwise and gradient-norm comparison of u with v
    Compare(Common),
    /// Hardy-Littlewood inequality on random cell functions
    Hardy(Common),
}

type Runner = fn(&RunConfig, u64, u64) -> CmdResult;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (common, run): (&Common, Runner) = match &cli.command {
        Command::CheckWeights(c) => (c, |cfg, _, _| commands::check_weights(cfg)),
        Command::Isoperimetry(c) => (c, commands::isoperimetry),
        Command::Solve(c) => (c, |cfg, _, _| commands::solve(cfg)),
        Command::Symmetrize(c) => (c, |cfg, _, _| commands::symmetrize(cfg)),
        Command::Compare(c) => (c, |cfg, _, _| commands::compare(cfg)),
        Command::Hardy(c) => (c, commands::hardy),
    };
    let cfg = match RunConfig::load(&common.config) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(Status::Usage.code() as u8);
        }
    };
    let trials = common.trials.unwrap_or(cfg.trials);
    let seed = common.seed.unwrap_or(cfg.seed);
    let outcome = match run(&cfg, trials, seed) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {}", e.message());
            return ExitCode::from(e.status().code() as u8);
        }
    };
    let written = match &common.out {
        Some(path) => std::fs::write(path, &outcome.body).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{}", outcome.body);
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(Status::Usage.code() as u8);
    }
    if !common.quiet {
        eprintln!("{}", outcome.summary);
    }
    ExitCode::from(outcome.status.code() as u8)
}
