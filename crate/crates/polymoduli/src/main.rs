use std::io;
use std::process::ExitCode;

use clap::Parser;
use polymoduli::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    match run(&cli, &mut stdout.lock()) {
        Ok(verdict) => ExitCode::from(verdict.exit_code()),
        Err(e) => {
            eprintln!("polymoduli: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
