use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use rabi_cli::{error::exit, Cli};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let code = match rabi_cli::run(&cli) {
        Ok(outcome) => {
            if cli.out.is_none() {
                let mut stdout = std::io::stdout().lock();
                if let Err(e) = stdout
                    .write_all(outcome.output.as_bytes())
                    .and_then(|_| stdout.flush())
                {
                    eprintln!("rabi: writing report: {e}");
                    return ExitCode::from(exit::IO as u8);
                }
            }
            exit::OK
        }
        Err(e) => {
            eprintln!("rabi: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
