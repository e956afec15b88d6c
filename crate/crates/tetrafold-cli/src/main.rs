//! `tetrafold`: one entry point for the whole workflow — folding, operator
//! construction, resource estimates, target screening, and structure
//! metrics — with machine-readable output for plotting.
//!
//! Exit codes: 0 on success, 2 for argument or precondition problems,
//! 3 for I/O problems.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use commands::{Command, Failure};
use config::FileConfig;

#[derive(Parser)]
#[command(name = "tetrafold", version, about = "Tetrahedral-lattice protein folding toolkit")]
struct Cli {
    /// Worker threads (overrides TETRAFOLD_THREADS and the config file).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// TOML file supplying defaults; explicit flags win.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let file = FileConfig::load(cli.config.as_deref())?;
    if let Some(n) = resolve_threads(cli.threads, &file)? {
        // A failure here means a pool already exists, which only happens
        // in-process during tests; the run proceeds on that pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    cli.command.run(&file)
}

/// Thread-count precedence: --threads, then TETRAFOLD_THREADS, then the
/// config file. None leaves rayon's default (one per core).
fn resolve_threads(flag: Option<usize>, file: &FileConfig) -> Result<Option<usize>, Failure> {
    let env = match std::env::var("TETRAFOLD_THREADS") {
        Ok(text) => Some(text.trim().parse::<usize>().map_err(|_| {
            Failure::Usage(format!(
                "TETRAFOLD_THREADS must be a positive integer, got '{text}'"
            ))
        })?),
        Err(_) => None,
    };
    let resolved = flag.or(env).or(file.threads);
    if resolved == Some(0) {
        return Err(Failure::Usage("thread count must be at least 1".into()));
    }
    Ok(resolved)
}
