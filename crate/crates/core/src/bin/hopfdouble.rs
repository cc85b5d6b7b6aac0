use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use hopfdouble::cli::{init_threads, run, Cli, EXIT_PASS, EXIT_USAGE};

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse_from(&argv);
    if let Err(e) = init_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE as u8);
    }
    let outcome = run(&cli, &argv[1..]);
    if let Some(e) = &outcome.error {
        eprintln!("error: {e}");
    } else if let Some(path) = &cli.global.out {
        if let Err(e) = std::fs::write(path, &outcome.text) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(EXIT_USAGE as u8);
        }
    } else {
        let mut stdout = std::io::stdout().lock();
        let _ = stdout.write_all(outcome.text.as_bytes());
    }
    if outcome.code == EXIT_PASS {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(outcome.code as u8)
    }
}
