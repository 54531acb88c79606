//! flamefront: command-line front end.
//!
//! Exit codes: 0 success, 1 usage/parameter error, 2 numerical or
//! validation failure.

mod args;
mod commands;
mod record;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, CliError, Command};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            std::process::exit(code);
        }
    };

    let outcome = match cli.command {
        Command::Solve(a) => commands::cmd_solve(a),
        Command::Sweep(a) => commands::cmd_sweep(a),
        Command::Profile(a) => commands::cmd_profile(a),
        Command::CompareAsymptotics(a) => commands::cmd_compare(a),
        Command::Phase(a) => commands::cmd_phase(a),
    };

    match outcome {
        Ok(code) => std::process::exit(code),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(1);
        }
        Err(CliError::Numerical(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
    }
}
