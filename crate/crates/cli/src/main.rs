mod args;
mod commands;
mod input;
mod report;

use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use crate::args::Cli;
use crate::commands::Output;
use crate::report::SCHEMA_VERSION;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command: Vec<String> = std::env::args().skip(1).collect();
    match commands::run(&cli) {
        Ok(Output::Raw(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok(Output::Report(report)) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.envelope(&command)).expect("report serializes"));
            } else {
                print!("{}", report.render_text());
            }
            ExitCode::from(report.status.exit_code())
        }
        Err(e) => {
            if cli.json {
                let envelope = json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": command,
                    "status": "error",
                    "reason": describe(&e),
                });
                println!("{}", serde_json::to_string_pretty(&envelope).expect("report serializes"));
            }
            eprintln!("error: {}", describe(&e));
            ExitCode::from(2)
        }
    }
}

/// The error chain joined by `: `, skipping causes already quoted by the
/// message above them.
fn describe(e: &anyhow::Error) -> String {
    let mut out = String::new();
    for cause in e.chain() {
        let text = cause.to_string();
        if out.ends_with(&text) {
            continue;
        }
        if !out.is_empty() {
            out.push_str(": ");
        }
        out.push_str(&text);
    }
    out
}
