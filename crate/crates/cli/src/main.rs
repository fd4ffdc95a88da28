mod args;
mod commands;
mod error;
mod io;
mod verify;

use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::error::ErrorKind;
use clap::Parser;

use args::Cli;
use commands::Context;
use error::code;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(code::USAGE),
            };
        }
    };

    if let Some(jobs) = cli.global.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs as usize)
            .build_global()
        {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(code::USAGE);
        }
    }

    let seed = cli.global.seed.resolve();
    if !cli.global.no_header {
        let now = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        eprintln!(
            "# simplex-ball {} seed={seed:#x} jobs={} unix-time={now}",
            env!("CARGO_PKG_VERSION"),
            rayon::current_num_threads()
        );
    }

    let ctx = Context {
        seed,
        tol: cli.global.tol.resolve(),
        output: cli.global.output,
    };
    match commands::run(cli.command, &ctx) {
        Ok(status) => ExitCode::from(status),
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
