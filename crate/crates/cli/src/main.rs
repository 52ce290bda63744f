use std::process::ExitCode;

use transgress_cli::config::OutputFormat;
use transgress_cli::{parse_config, run, ParseOutcome};

fn main() -> ExitCode {
    let invocation = match parse_config(std::env::args_os()) {
        Ok(inv) => inv,
        Err(ParseOutcome::Clap(e)) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
        Err(ParseOutcome::Usage(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = run(&invocation.config);
    let rendered = match invocation.config.output {
        OutputFormat::Text => report.to_text(),
        OutputFormat::Json => report.to_json(),
    };
    match &invocation.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &rendered) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{rendered}"),
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
