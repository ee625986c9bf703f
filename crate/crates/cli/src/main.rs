//! `aerobust`: corrupt, cloud, tile and evaluate aerial detection datasets.
//!
//! Exit status: 0 on success, 1 when some items failed but the rest were
//! written, 2 on configuration or usage errors.

mod cloudify;
mod common;
mod config;
mod corrupt;
mod evaluate;
mod report;
mod split;
mod tables;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;

use common::Outcome;

#[derive(Parser, Debug)]
#[command(name = "aerobust", version, about = "Robustness benchmarking for oriented object detection on aerial imagery")]
struct Cli {
    /// TOML config; keys match the long flags (with `_`), flat or under `[<command>]`.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads; all available cores when absent. Results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Log progress (`-vv` for debug output).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write every (kind, severity) corrupted copy of a dataset.
    Corrupt(corrupt::CorruptArgs),
    /// Composite real clouds from a source pool onto a dataset.
    Cloudify(cloudify::CloudifyArgs),
    /// Cut large images and their labels into overlapping tiles.
    Split(split::SplitArgs),
    /// Score detections over the corruption grid and summarise robustness.
    Evaluate(evaluate::EvaluateArgs),
    /// Severity curves and category bars from one or more matrices.
    Report(report::ReportArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Corrupt(_) => "corrupt",
            Command::Cloudify(_) => "cloudify",
            Command::Split(_) => "split",
            Command::Evaluate(_) => "evaluate",
            Command::Report(_) => "report",
        }
    }
}

fn resolve<T: Serialize + DeserializeOwned>(file: Option<&config::FileSettings>, flags: T) -> Result<T> {
    match file {
        Some(f) => config::merge(f.section.clone(), &flags),
        None => Ok(flags),
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    let file = cli.config.as_deref().map(|p| config::load(p, cli.command.name())).transpose()?;
    let threads = cli.threads.or(file.as_ref().and_then(|f| f.threads));
    if let Some(n) = threads {
        if n == 0 {
            bail!("usage error: --threads must be at least 1");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    let file = file.as_ref();
    match cli.command {
        Command::Corrupt(a) => corrupt::run(resolve(file, a)?),
        Command::Cloudify(a) => cloudify::run(resolve(file, a)?),
        Command::Split(a) => split::run(resolve(file, a)?),
        Command::Evaluate(a) => evaluate::run(resolve(file, a)?),
        Command::Report(a) => report::run(resolve(file, a)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::Partial) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
