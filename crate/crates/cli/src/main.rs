use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;
use tricolor_cli::{init_threads, run, Cli, CliError, RunConfig};

fn main() -> ExitCode {
    let config = RunConfig::from(Cli::parse());
    match execute(&config) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn execute(config: &RunConfig) -> Result<bool, CliError> {
    init_threads()?;
    let mut out: Box<dyn Write> = match &config.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let passed = run(config, &mut out, &mut io::stderr().lock())?;
    out.flush()?;
    Ok(passed)
}
