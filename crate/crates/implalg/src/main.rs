use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use implalg::cli::{run, Args};

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(out) => {
            for n in &out.notices {
                eprintln!("implalg: {n}");
            }
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(out.stdout.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(4);
            }
            ExitCode::from(out.code)
        }
        Err((e, notices)) => {
            for n in &notices {
                eprintln!("implalg: {n}");
            }
            eprintln!("implalg: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
