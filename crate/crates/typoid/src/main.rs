use std::process::ExitCode;

use clap::Parser;
use typoid::cli::{run, Cli, MAX_CHECKS_VAR};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limit = std::env::var(MAX_CHECKS_VAR).ok();
    let outcome = run(cli, limit.as_deref());
    for m in &outcome.messages {
        eprintln!("{m}");
    }
    print!("{}", outcome.report.to_json());
    ExitCode::from(outcome.exit as u8)
}
