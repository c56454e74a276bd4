use std::process::ExitCode;

use clap::Parser;
use johnson_cli::args::Cli;
use johnson_cli::commands;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("panconnect: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
