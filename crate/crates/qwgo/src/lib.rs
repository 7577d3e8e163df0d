//! `qwgo` — experiment harness around the emulation core: single seeded
//! runs, Monte-Carlo success curves, averaged pre-measurement distributions,
//! theory validation, and classical-baseline comparisons, all emitted as
//! deterministic CSV (optionally with a small SVG rendering).

pub mod cli;
pub mod commands;
pub mod csvio;
pub mod problem;
pub mod runner;
pub mod svg;
pub mod validate;

use cli::UsageError;

/// CLI driver. Returns the process exit code: 0 on success, 1 for
/// usage/configuration errors, 2 for numerical or validation failures.
pub fn run(args: &[String]) -> i32 {
    match dispatch(args) {
        Ok(code) => code,
        Err(DriverError::Usage(e)) => {
            eprintln!("error: {e}");
            eprintln!();
            eprintln!("{}", cli::USAGE);
            1
        }
        Err(DriverError::Failure(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

#[derive(Debug)]
pub enum DriverError {
    Usage(UsageError),
    Failure(String),
}

impl From<UsageError> for DriverError {
    fn from(e: UsageError) -> Self {
        DriverError::Usage(e)
    }
}

impl From<qwgo_core::Error> for DriverError {
    fn from(e: qwgo_core::Error) -> Self {
        DriverError::Failure(e.to_string())
    }
}

impl From<std::io::Error> for DriverError {
    fn from(e: std::io::Error) -> Self {
        DriverError::Failure(format!("io: {e}"))
    }
}

fn dispatch(args: &[String]) -> Result<i32, DriverError> {
    let Some(command) = args.first() else {
        return Err(UsageError::new("missing subcommand").into());
    };
    match command.as_str() {
        "optimize" => commands::cmd_optimize(&cli::Flags::parse(&args[1..])?),
        "experiment" => commands::cmd_experiment(&cli::Flags::parse(&args[1..])?),
        "pdf" => commands::cmd_pdf(&cli::Flags::parse(&args[1..])?),
        "validate" => commands::cmd_validate(&cli::Flags::parse(&args[1..])?),
        "baseline" => commands::cmd_baseline(&cli::Flags::parse(&args[1..])?),
        "help" | "--help" | "-h" => {
            println!("{}", cli::USAGE);
            Ok(0)
        }
        other => Err(UsageError::new(format!("unknown subcommand `{other}`")).into()),
    }
}
