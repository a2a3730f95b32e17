//! `chaoshide`: command-line front end for chaotic-iteration information
//! hiding and its security lab.

mod args;
mod commands;
mod job;

use std::process::ExitCode;

use anyhow::{bail, Result};
use chaoshide::exec::Execution;
use clap::Parser;

use args::{Cli, Command};
use commands::Outcome;
use job::JobFile;

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let file = JobFile::load(cli.config.as_deref())?;
    match &cli.command {
        Command::Embed(a) => commands::embed_cmd(a, &file),
        Command::Detect(a) => commands::detect_cmd(a, &file),
        Command::Lscs(a) => commands::lscs_cmd(a, &file),
        Command::Analyze(a) => commands::analyze_cmd(a, &file, Execution::Parallel),
    }
}

#[cfg(feature = "parallel")]
fn run(cli: &Cli) -> Result<Outcome> {
    let threads = match cli.threads {
        Some(0) => bail!("--threads must be at least 1"),
        Some(t) => t,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build()?;
    pool.install(|| dispatch(cli))
}

#[cfg(not(feature = "parallel"))]
fn run(cli: &Cli) -> Result<Outcome> {
    if cli.threads == Some(0) {
        bail!("--threads must be at least 1");
    }
    dispatch(cli)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Positive) => ExitCode::SUCCESS,
        Ok(Outcome::Negative) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
