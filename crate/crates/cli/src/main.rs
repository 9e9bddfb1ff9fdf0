use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use srdct_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(&cli, &mut out);
    let flushed = out.flush();
    match result {
        Ok(()) if flushed.is_ok() => ExitCode::SUCCESS,
        Ok(()) => {
            eprintln!("srdct: write failed");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("srdct: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
