use std::io::Write;
use std::process::ExitCode;

use abelian_codes_cli::{run, Cli, Command, ExitStatus, RunConfig};
use clap::error::ErrorKind;
use clap::Parser;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(ExitStatus::Usage.code() as u8),
            };
        }
    };
    let Command::Analyze(args) = cli.command;
    let outcome = run(&RunConfig::from(args));
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.status.code() as u8)
}
