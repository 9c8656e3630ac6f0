use std::io::Write;

use clap::Parser;
use phimod_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let out = run(&cli);
    // A closed pipe is not an error worth a panic.
    let _ = std::io::stdout().write_all(out.report.as_bytes());
    for note in &out.notes {
        eprintln!("{note}");
    }
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &out.report) {
            eprintln!("error: {}: {e}", path.display());
            std::process::exit(2);
        }
    }
    std::process::exit(out.code);
}
