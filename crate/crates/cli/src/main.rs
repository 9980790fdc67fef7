mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use eglfr::Error;

use args::{Cli, Command};

pub const SCHEMA: &str = "eglfr-kit/1";

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Data(String),
    Convergence(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Data(_) => 3,
            Failure::Convergence(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Data(m) | Failure::Convergence(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::Parse { .. }
            | Error::InvalidData(_)
            | Error::DegenerateData(_)
            | Error::Infeasible(_) => Failure::Data(msg),
            Error::Domain(_)
            | Error::InvalidParams(_)
            | Error::Regime(_)
            | Error::UnknownModel(_)
            | Error::MomentNonexistent { .. } => Failure::Usage(msg),
            _ => Failure::Convergence(msg),
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("EGLFR_KIT_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().ok().filter(|n| *n > 0).ok_or_else(|| {
        Failure::Usage(format!(
            "EGLFR_KIT_THREADS must be a positive integer, got `{raw}`"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))
}

/// Rendered output of a successful command.
pub struct Output {
    pub text: String,
    /// False when a fit did not converge; the output is still printed.
    pub converged: bool,
}

impl Output {
    pub fn ok(text: String) -> Self {
        Self {
            text,
            converged: true,
        }
    }
}

fn run(cli: Cli) -> Result<Output, Failure> {
    configure_threads()?;
    match cli.command {
        Command::Fit(a) => commands::fit(&a),
        Command::Compare(a) => commands::compare(&a),
        Command::Curves(a) => commands::curves(&a),
        Command::Sample(a) => commands::sample(&a),
        Command::Moments(a) => commands::moments(&a),
        Command::McThreshold(a) => commands::mc_threshold(&a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let _ = std::io::stdout().lock().write_all(out.text.as_bytes());
            if out.converged {
                ExitCode::SUCCESS
            } else {
                eprintln!("eglfr-kit: at least one fit did not converge");
                ExitCode::from(4)
            }
        }
        Err(f) => {
            eprintln!("eglfr-kit: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
