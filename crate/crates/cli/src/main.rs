use std::process::ExitCode;

use clap::Parser;
use qls_cli::{execute, Cli};

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("qls: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
