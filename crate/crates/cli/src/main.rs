mod args;
mod commands;
mod config;
mod output;

use std::ffi::OsString;
use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use commands::Outcome;

const EXIT_ERROR: u8 = 1;
const EXIT_VALIDATION: u8 = 2;

fn parse_args() -> Result<Cli, ExitCode> {
    let raw: Vec<OsString> = std::env::args_os().collect();
    let raw = match config::config_path(&raw) {
        Some(p) => match config::load(&p).and_then(|text| config::merge(raw, &text)) {
            Ok(merged) => merged,
            Err(e) => {
                eprintln!("error: {e:#}");
                return Err(ExitCode::from(EXIT_ERROR));
            }
        },
        None => raw,
    };
    Cli::try_parse_from(raw).map_err(|e| {
        let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
        let _ = e.print();
        ExitCode::from(code)
    })
}

fn main() -> ExitCode {
    let cli = match parse_args() {
        Ok(c) => c,
        Err(code) => return code,
    };
    match commands::run(cli.command) {
        Ok(Outcome::Clean) => ExitCode::SUCCESS,
        Ok(Outcome::ValidationFailed) => ExitCode::from(EXIT_VALIDATION),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
