use std::process::ExitCode;

use clap::Parser;

use sel_cli::{run, write_report, RunConfig};

fn main() -> ExitCode {
    let config = RunConfig::parse();
    let out = config.output().out.clone();
    let code = match run(&config) {
        Ok(outcome) => match write_report(&outcome.report, out.as_deref()) {
            Ok(()) => {
                for m in &outcome.messages {
                    eprintln!("{m}");
                }
                outcome.exit_code
            }
            Err(e) => {
                eprintln!("sel: {e}");
                e.exit_code()
            }
        },
        Err(e) => {
            eprintln!("sel: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
