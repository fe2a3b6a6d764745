use std::io::{Read, Write};
use std::process::ExitCode;

use clap::Parser;
use translative_cli::{error_json, run, Cli, CliError, Outcome, EXIT_ERROR};

fn read_input(cli: &Cli) -> Result<String, CliError> {
    match &cli.input {
        Some(path) => Ok(std::fs::read_to_string(path)?),
        None => {
            let mut text = String::new();
            std::io::stdin().read_to_string(&mut text)?;
            Ok(text)
        }
    }
}

fn write_output(cli: &Cli, json: &str) -> Result<(), CliError> {
    match &cli.output {
        Some(path) => std::fs::write(path, json)?,
        None => std::io::stdout().write_all(json.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = read_input(&cli).and_then(|text| run(&cli, &text));
    let Outcome { json, code } = match result {
        Ok(outcome) => outcome,
        Err(err) => {
            eprint!("{}", error_json(&err));
            return ExitCode::from(EXIT_ERROR as u8);
        }
    };
    if let Err(err) = write_output(&cli, &json) {
        eprint!("{}", error_json(&err));
        return ExitCode::from(EXIT_ERROR as u8);
    }
    ExitCode::from(code as u8)
}
