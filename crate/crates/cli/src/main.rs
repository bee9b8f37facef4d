mod args;
mod commands;
mod parse;

use std::process::ExitCode;

use clap::Parser;
use cmray::modfun::EvalContext;
use serde_json::json;

use args::{Cli, Command};
use commands::{CliError, CliResult, Report};

const DIGITS_ENV: &str = "CMRAY_DIGITS";

fn resolve_digits(flag: Option<u32>) -> CliResult<u32> {
    if let Some(d) = flag {
        return Ok(d);
    }
    match std::env::var(DIGITS_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| CliError::Usage(format!("{DIGITS_ENV}={s} is not a digit count"))),
        Err(_) => Ok(EvalContext::default().digits),
    }
}

fn run(cli: &Cli) -> CliResult<(u32, Report)> {
    let digits = resolve_digits(cli.digits)?;
    let ctx = EvalContext::new(digits)?;
    let report = match &cli.command {
        Command::Field(a) => commands::field(a, &ctx)?,
        Command::Bound(a) => commands::bound(a)?,
        Command::Eval(a) => commands::eval(a, &ctx)?,
        Command::Verify(a) => commands::verify(a, &ctx)?,
        Command::Example(_) => commands::example_paper()?,
    };
    Ok((digits, report))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo: Vec<String> = std::env::args().skip(1).collect();
    match run(&cli) {
        Ok((digits, r)) => {
            let status = match r.passed {
                Some(false) => "fail",
                _ => "ok",
            };
            if cli.json {
                let env = json!({
                    "command": echo.join(" "),
                    "inputs": r.inputs,
                    "results": r.results,
                    "digits": digits,
                    "status": status,
                });
                println!("{}", serde_json::to_string_pretty(&env).expect("envelope serializes"));
            } else {
                for l in &r.lines {
                    println!("{l}");
                }
            }
            if r.passed == Some(false) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            if cli.json {
                let env = json!({ "command": echo.join(" "), "status": "error", "error": e.to_string() });
                println!("{}", serde_json::to_string_pretty(&env).expect("envelope serializes"));
            }
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
