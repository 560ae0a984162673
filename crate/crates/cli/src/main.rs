mod args;
mod commands;

use args::{Cli, Command, Format};
use clap::Parser;
use hadarank_core::Error;
use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    // the acceptance suite prints one line per criterion unless JSON is forced
    let text = cli.run.format == Format::Text
        || (matches!(cli.command, Command::Reproduce { .. }) && !std::env::args().any(|a| a == "--format"));
    match commands::dispatch(&cli.command, &cli.run) {
        Ok(report) => {
            let out = if text {
                report.text.trim_end().to_string()
            } else {
                serde_json::to_string_pretty(&report.json).expect("json output")
            };
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{out}");
            ExitCode::from(report.exit as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Budget { .. } => 2,
                _ => 1,
            })
        }
    }
}
