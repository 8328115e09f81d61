use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use impbox_cli::commands::CommandError;
use impbox_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(CommandError::Mismatch(report)) => {
            print!("{report}");
            let _ = std::io::stdout().flush();
            eprintln!("error: representation disagrees with the credal-set oracle");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
