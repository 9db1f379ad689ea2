use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use pfcat_cli::{run, Cli};

fn main() -> ExitCode {
    // clap exits with status 2 on bad flags
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe (`| head`) is not an error worth reporting
            let _ = stdout.write_all(report.stdout.as_bytes());
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
