use std::process::ExitCode;

use clap::Parser;
use negref::cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(report) => {
            println!("{}", report.summary_line);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("negref: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
