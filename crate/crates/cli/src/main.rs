//! `truncvote`: winners, truncation, sampling, bounds and experiments from
//! the command line.

mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use crate::args::Cli;

/// Error class of a failed command, mapped to the process exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags, unreadable files, malformed data or rule strings.
    Input(String),
    /// Well-formed request outside a model's domain.
    Domain(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Domain(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Domain(m) => m,
        }
    }
}

impl From<truncvote::Error> for Failure {
    fn from(e: truncvote::Error) -> Self {
        use truncvote::Error as E;
        match e {
            E::Parse { .. } | E::InvalidRule { .. } | E::Io(_) | E::Csv(_) => Failure::Input(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
