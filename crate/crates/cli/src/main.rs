use std::process::ExitCode;

use algpoints_cli::error::CliError;

fn main() -> ExitCode {
    match algpoints_cli::run(std::env::args_os()) {
        Ok(msg) | Err(CliError::Info(msg)) => {
            print!("{msg}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
