//! `macrolearn`: learn macro-operators, solve and benchmark problems, run
//! the sliding-tile verification checks and generate problem files.
//!
//! Exit codes: 0 success, 1 failed check or bound, 2 configuration error,
//! 3 escape search exhausted.

mod bench;
mod config;
mod gen;
mod learn;
mod solve;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{ConfigError, Knobs};

#[derive(Parser)]
#[command(name = "macrolearn", version, about = "Macro-operator learning for hill-climbing search")]
struct Cli {
    /// TOML config file; flags override its keys.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Learn a macro set until quiescence.
    Learn(learn::LearnArgs),
    /// Learn across increasing domain parameters.
    ParametricLearn(learn::ParametricArgs),
    /// Solve one problem file.
    Solve(solve::SolveArgs),
    /// Solve a generated test suite and emit one CSV row per problem.
    Bench(bench::BenchArgs),
    /// Run the sliding-tile verification checks.
    Verify(verify::VerifyArgs),
    /// Write problem files.
    Gen(gen::GenArgs),
}

/// How a subcommand ended, mapped onto the process exit code.
#[derive(Debug)]
pub enum Outcome {
    Ok,
    CheckFailed,
    EscapeExhausted,
}

pub enum Failure {
    Config(ConfigError),
    Escape(macrolearn::Error),
    Other(String),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e)
    }
}

impl From<macrolearn::Error> for Failure {
    fn from(e: macrolearn::Error) -> Self {
        use macrolearn::Error as E;
        match e {
            E::EscapeExhausted { .. } => Failure::Escape(e),
            E::Parse { .. }
            | E::InvalidParameter(_)
            | E::UnknownOperatorName(_)
            | E::DisconnectedGrid
            | E::PreconditionViolated(_) => Failure::Config(ConfigError(e.to_string())),
            _ => Failure::Other(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Other(e.to_string())
    }
}

pub type CmdResult = Result<Outcome, Failure>;

fn knobs_of(command: &Command) -> Knobs {
    match command {
        Command::Learn(a) => a.knobs.clone(),
        Command::ParametricLearn(a) => a.knobs.clone(),
        Command::Solve(a) => a.knobs.clone(),
        Command::Bench(a) => a.knobs.clone(),
        Command::Verify(a) => a.knobs.clone(),
        Command::Gen(a) => a.knobs.clone(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = Knobs::load(knobs_of(&cli.command), cli.config.as_deref())
        .map_err(Failure::from)
        .and_then(|cfg| match &cli.command {
            Command::Learn(a) => learn::run(&cfg, a),
            Command::ParametricLearn(a) => learn::run_parametric(&cfg, a),
            Command::Solve(a) => solve::run(&cfg, a),
            Command::Bench(a) => bench::run(&cfg, a),
            Command::Verify(a) => verify::run(&cfg, a),
            Command::Gen(a) => gen::run(&cfg, a),
        });
    match result {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::CheckFailed) => ExitCode::from(1),
        Ok(Outcome::EscapeExhausted) => ExitCode::from(3),
        Err(Failure::Config(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Escape(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(Failure::Other(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
