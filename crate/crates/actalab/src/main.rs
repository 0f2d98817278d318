use std::fs;
use std::io::Write;
use std::process::ExitCode;

use actalab::cli::Cli;
use actalab::commands::{run, Status};
use clap::Parser;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // help and version requests are not errors
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let output = match run(&cli) {
        Ok(output) => output,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Some((path, contents)) = &output.file {
        if let Err(e) = fs::write(path, contents) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    let mut stdout = std::io::stdout().lock();
    let printed = if cli.json {
        writeln!(stdout, "{}", serde_json::to_string_pretty(&output.json).expect("json output"))
    } else {
        write!(stdout, "{}", output.text)
    };
    if printed.is_err() {
        return ExitCode::from(2);
    }
    match output.status {
        Status::Ok => ExitCode::SUCCESS,
        Status::Fails => ExitCode::from(1),
    }
}
