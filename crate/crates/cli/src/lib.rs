//! Batch runner: reads a JSON config, runs one command, writes a JSON report and CSV matrices.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 for usage, config or
//! domain errors.

pub mod commands;
pub mod config;
pub mod report;

use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use jetlab_core::JetError;

use crate::config::RunConfig;
use crate::report::VerificationReport;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Domain(#[from] JetError),
    #[error("io: {0}")]
    Io(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Jetgram,
    Decompose,
    Homogeneity,
    Quotient,
    Operator,
    VerifyAll,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Jetgram => "jetgram",
            Command::Decompose => "decompose",
            Command::Homogeneity => "homogeneity",
            Command::Quotient => "quotient",
            Command::Operator => "operator",
            Command::VerifyAll => "verify-all",
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "jetlab", version, about = "Jet kernels, decompositions and homogeneity checks on the polydisc")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    #[arg(long)]
    pub config: PathBuf,
    /// Directory for the JSON report and CSV matrices.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Replaces the seed from the config.
    #[arg(long)]
    pub seed: Option<u64>,
}

pub fn execute(command: Command, cfg: &RunConfig, out: Option<&Path>) -> Result<VerificationReport, CliError> {
    match command {
        Command::Jetgram => commands::cmd_jetgram(cfg, out),
        Command::Decompose => commands::cmd_decompose(cfg, out),
        Command::Homogeneity => commands::cmd_homogeneity(cfg, out),
        Command::Quotient => commands::cmd_quotient(cfg, out),
        Command::Operator => commands::cmd_operator(cfg, out),
        Command::VerifyAll => commands::cmd_verify_all(cfg, out),
    }
}

fn configure_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var("JETLAB_THREADS") {
        let n: usize = v.parse().map_err(|_| CliError::Usage(format!("JETLAB_THREADS={v:?} is not a thread count")))?;
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

fn run_inner(cli: &Cli) -> Result<VerificationReport, CliError> {
    configure_threads()?;
    let mut cfg = RunConfig::load(&cli.config)?;
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    let report = execute(cli.command, &cfg, cli.out.as_deref())?;
    if let Some(dir) = &cli.out {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
        let path = dir.join(format!("{}.json", cli.command.name()));
        std::fs::write(&path, report.to_json()).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(report)
}

/// Runs the parsed command and returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    match run_inner(cli) {
        Ok(report) => {
            for r in &report.records {
                println!("{}", r.line());
            }
            if cli.out.is_none() {
                print!("{}", report.to_json());
            }
            if report.pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("jetlab: {e}");
            2
        }
    }
}
