use std::io::Write;
use std::process::ExitCode;

use chibound_cli::{run, Cli, BUDGET_VAR};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = std::env::var(BUDGET_VAR).ok();
    match run(&cli, &mut std::io::stdin().lock(), budget.as_deref()) {
        Ok(outcome) => {
            for w in &outcome.warnings {
                eprintln!("warning: {w}");
            }
            if cli.command.output().out.is_none() {
                let _ = std::io::stdout().write_all(outcome.document.as_bytes());
            }
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => {
            eprintln!("chibound: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
