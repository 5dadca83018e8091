use std::process::ExitCode;

use clap::Parser;
use orbibracket_cli::{describe_error, run, Cli, EXIT_INPUT_ERROR};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            println!("{}", outcome.stdout);
            ExitCode::from(outcome.code as u8)
        }
        Err(err) => {
            eprintln!("{}", describe_error(&err));
            ExitCode::from(EXIT_INPUT_ERROR as u8)
        }
    }
}
