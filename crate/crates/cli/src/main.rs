use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use mcspeedup_cli::{run, Cli};

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(lines) => {
            let mut out = io::stdout().lock();
            for line in lines {
                // a closed pipe (e.g. `| head`) is not an error
                if writeln!(out, "{line}").is_err() {
                    break;
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("mcspeedup: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
