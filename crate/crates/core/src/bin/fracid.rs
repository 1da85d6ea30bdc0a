use std::process::ExitCode;

use clap::Parser;
use fracid::cli::{run, Cli};

fn main() -> ExitCode {
    match Cli::parse().into_config().and_then(|config| run(&config)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.class());
            ExitCode::FAILURE
        }
    }
}
