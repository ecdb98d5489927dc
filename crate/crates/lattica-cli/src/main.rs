use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use lattica_cli::cli::{run, Cli, Command};
use lattica_cli::emit::emit;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = std::time::Instant::now();
    let out = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {}", e);
            return ExitCode::from(2);
        }
    };
    let text = emit(&out.doc, cli.emit);
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
        return ExitCode::from(2);
    }
    // timings vary between runs, so they stay off stdout
    if matches!(cli.command, Command::RunAll { .. }) {
        eprintln!("finished in {:.1?}", started.elapsed());
    }
    if out.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
