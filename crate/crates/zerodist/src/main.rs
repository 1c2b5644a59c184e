use std::process::ExitCode;

use clap::Parser;
use zerodist::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match zerodist::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("zerodist: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
