mod args;
mod commands;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::Output;

fn run(cli: &Cli) -> Result<Output, commands::CliError> {
    match &cli.command {
        Command::Count(a) => commands::count(a),
        Command::Enumerate(a) => commands::enumerate(a),
        Command::Stat(a) => commands::stat(a),
        Command::Simples(a) => commands::simples(a),
        Command::Series(a) => commands::series(a),
        Command::Verify(a) => commands::verify(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            // a closed pipe is not an error worth reporting
            let _ = stdout
                .write_all(out.text.as_bytes())
                .and_then(|_| stdout.flush());
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("permlab: {}", e.message());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
