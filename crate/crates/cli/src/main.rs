//! `qwalk` command-line front end.

mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;

use crate::args::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Table(a) => commands::table(&cli.common, a),
        Command::Mu(a) => commands::mu(&cli.common, a),
        Command::Complement(a) => commands::complement(&cli.common, a),
        Command::Verify(a) => commands::verify(&cli.common, a),
        Command::Sums(a) => commands::sums(&cli.common, a),
        Command::Export(a) => commands::export(&cli.common, a),
    };
    match result {
        Ok(status) => status,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
