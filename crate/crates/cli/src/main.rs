use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use heegaard_cli::commands::{run, Cli};
use heegaard_cli::report::{echo_command, exit_code, human_line, summarize, Report};

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version exit 0; malformed invocations exit 2.
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let start = Instant::now();
    let outcome = run(&cli);
    let mut report = Report {
        command: echo_command(&args[1..]),
        seed: cli.seed,
        result: serde_json::Value::Null,
        checks: vec![],
        summary: Default::default(),
        error: None,
        exit_code: 0,
    };
    match outcome {
        Ok(out) => {
            for l in &out.lines {
                println!("{l}");
            }
            for c in &out.checks {
                println!("{}", human_line(c));
            }
            report.summary = summarize(&out.checks);
            report.exit_code = exit_code(&out.checks);
            report.result = out.result;
            report.checks = out.checks.iter().map(Into::into).collect();
            if !out.checks.is_empty() {
                let s = &report.summary;
                println!(
                    "{} pass, {} fail, {} known-discrepancy, {} info in {:.2}s",
                    s.pass,
                    s.fail,
                    s.known_discrepancy,
                    s.info,
                    start.elapsed().as_secs_f64()
                );
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            report.error = Some(e.to_string());
            report.exit_code = e.exit_code();
        }
    }
    if let Some(path) = &cli.json {
        let text = match serde_json::to_string_pretty(&report) {
            Ok(t) => t + "\n",
            Err(e) => {
                eprintln!("error: cannot encode report: {e}");
                return ExitCode::from(1);
            }
        };
        if let Err(e) = std::fs::write(path, text) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    ExitCode::from(report.exit_code as u8)
}
