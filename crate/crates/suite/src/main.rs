use std::process::ExitCode;

use clap::Parser;
use hecke_trace::cli::{run, Cli};
use hecke_trace::exit;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::from(exit::VERIFIED),
        Ok(false) => ExitCode::from(exit::CLAIM_FAILED),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit::USAGE)
        }
    }
}
