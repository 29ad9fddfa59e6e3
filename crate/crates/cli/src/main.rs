mod args;
mod commands;
mod render;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::Outcome;
use render::Error;

const EXIT_VIOLATION: u8 = 1;
/// Usage errors and every other failure; clap uses the same code for its own.
const EXIT_ERROR: u8 = 2;

fn run(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Divdiff(a) => commands::divdiff(a),
        Command::Catalog { action } => commands::catalog(action),
        Command::VerifySandwich(a) => commands::verify_sandwich(a),
        Command::VerifyCm(a) => commands::verify_cm(a),
        Command::VerifyGen(a) => commands::verify_gen(a),
        Command::Mvt(a) => commands::mvt(a),
    }
}

fn exit_code(result: &Result<Outcome, Error>) -> u8 {
    match result {
        Ok(outcome) if outcome.violation => EXIT_VIOLATION,
        Ok(_) => 0,
        Err(_) => EXIT_ERROR,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli);
    let code = exit_code(&result);
    match result {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(outcome.text.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(EXIT_ERROR);
            }
        }
        Err(e) => eprintln!("error: {e}"),
    }
    ExitCode::from(code)
}
