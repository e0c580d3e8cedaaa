mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use commands::Failure;

/// Environment variable capping the number of worker threads.
const WORKERS_VAR: &str = "MUI_WORKERS";

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(raw) = std::env::var(WORKERS_VAR) {
        match raw.trim().parse::<usize>() {
            Ok(n) if n > 0 => {
                // only fails if a pool already exists, which cannot happen this early
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("error: {WORKERS_VAR} must be a positive integer, got {raw:?}");
                return ExitCode::from(2);
            }
        }
    }
    let (text, code) = match commands::run(&cli) {
        Ok(out) => (out.text, if out.all_passed { 0 } else { 1 }),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            return ExitCode::from(1);
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
