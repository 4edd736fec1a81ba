use std::path::PathBuf;
use std::process;

use anyhow::Context;
use clap::{Parser, Subcommand};
use coincidence::scenario::run_scenario;

/// Coincidence and common fixed points of mapping pairs, driven by scenario files.
#[derive(Debug, Parser)]
#[command(name = "coincide", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a scenario file and print its report.
    ///
    /// Exit status: 0 all checks passed or a coincidence point was found,
    /// 1 a check failed or the iteration did not converge, 2 input error,
    /// 3 a theorem conclusion failed under passing hypotheses.
    Run {
        /// Scenario file.
        file: PathBuf,
        /// Also write the report to this path.
        #[arg(long, value_name = "PATH")]
        report: Option<PathBuf>,
        /// Override the scenario's seed.
        #[arg(long, value_name = "U64")]
        seed: Option<u64>,
        /// Do not print the report to standard output.
        #[arg(long)]
        quiet: bool,
    },
}

fn main() {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            process::exit(2);
        }
    }
}

fn execute(cli: Cli) -> anyhow::Result<i32> {
    let Command::Run { file, report, seed, quiet } = cli.command;
    let (code, rendered) = run_scenario(&file, seed);
    let text = rendered.render();
    if !quiet {
        print!("{text}");
    }
    if let Some(path) = report {
        std::fs::write(&path, &text).with_context(|| format!("writing report to {}", path.display()))?;
    }
    if let Some(err) = rendered.get("error") {
        eprintln!("error: {err}");
    }
    Ok(code.code())
}
