mod args;
mod compare;
mod output;
mod rate;
mod source;

use std::process::ExitCode;

use anyhow::Result;
use clap::Parser;

use args::{Cli, Command, SolverArgs};

fn with_pool<T: Send>(common: &SolverArgs, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(common.threads).build()?;
    pool.install(f)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Compare(a) => {
            let table = with_pool(&a.common, || compare::run(&a))?;
            table.emit(a.common.format, a.common.out.as_deref())
        }
        Command::RateProfile(a) => {
            let table = with_pool(&a.common, || rate::run(&a))?;
            table.emit(a.common.format, a.common.out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
