use std::io::Write;

use clap::Parser;
use geon_cli::{run, Cli, Options};

fn main() {
    let cli = Cli::parse();
    let opts = Options {
        tolerance: cli.tolerance,
        seed: cli.seed,
    };
    let report = run(&cli.command, &opts);
    let text = if cli.json {
        let mut s = serde_json::to_string_pretty(&report.to_json()).expect("report serializes");
        s.push('\n');
        s
    } else {
        report.to_text()
    };
    // A closed pipe is not worth a panic.
    let _ = std::io::stdout().write_all(text.as_bytes());
    std::process::exit(report.status);
}
