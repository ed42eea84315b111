use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use matrovar_cli::{render_text, run, Cli, Format};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = run(cli.command, &cli.opts);
    match cli.opts.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string(&outcome.report).expect("reports serialize")
        ),
        Format::Text => print!("{}", render_text(&outcome.report, start.elapsed())),
    }
    if let Some(err) = outcome.report.get("error") {
        eprintln!("error: {}", err["message"].as_str().unwrap_or_default());
    }
    ExitCode::from(outcome.code as u8)
}
