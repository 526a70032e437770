use std::process::ExitCode;

use clap::Parser;
use irrev_cli::{run, Cli, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("irrev: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
