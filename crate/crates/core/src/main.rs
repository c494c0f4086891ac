use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use subtrop::cli::{run, CliConfig};

fn main() -> ExitCode {
    let cfg = CliConfig::parse();
    let outcome = run(&cfg);
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(u8::try_from(outcome.code).unwrap_or(2))
}
