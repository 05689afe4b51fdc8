//! `twomode`: trajectories, steady states, sweeps and validation of the
//! two-mode squeezing model, written as CSV or JSON.

mod commands;
mod config;
mod table;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use config::{CommonArgs, RunConfig};
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;
use table::Table;

pub const EXIT_VALIDATION: u8 = 1;
pub const EXIT_SOLVER: u8 = 2;
pub const EXIT_USAGE: u8 = 64;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub msg: String,
}

impl Failure {
    pub fn usage(msg: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            msg: msg.into(),
        }
    }

    pub fn solver(msg: impl Into<String>) -> Self {
        Self {
            code: EXIT_SOLVER,
            msg: msg.into(),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "twomode",
    version,
    about = "Entanglement of two damped modes under two-mode squeezing"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate from the vacuum and tabulate f and the negativity.
    Trajectory(CommonArgs),
    /// Long-time state, its negativity and regime.
    Steady(CommonArgs),
    /// Negativity and separability of one state.
    Negativity(commands::NegativityArgs),
    /// Steady-state negativity over one or two parameter axes.
    Sweep(commands::SweepArgs),
    /// Identical baths starting from the thermal state.
    Thermal(CommonArgs),
    /// Check the closed forms against the Fock-space oracle.
    Validate(commands::ValidateArgs),
}

fn pool(jobs: Option<usize>) -> Result<rayon::ThreadPool, Failure> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        b = b.num_threads(j);
    }
    b.build()
        .map_err(|e| Failure::solver(format!("thread pool: {e}")))
}

fn emit(table: &Table, cfg: &RunConfig) -> Result<(), Failure> {
    let io_err = |e: io::Error| Failure::solver(format!("write failed: {e}"));
    match &cfg.out {
        Some(path) => {
            let f = File::create(path)
                .map_err(|e| Failure::usage(format!("cannot create {}: {e}", path.display())))?;
            let mut w = BufWriter::new(f);
            table.write(&mut w, cfg.format).map_err(io_err)?;
            w.flush().map_err(io_err)
        }
        None => {
            let mut w = BufWriter::new(io::stdout().lock());
            table.write(&mut w, cfg.format).map_err(io_err)?;
            w.flush().map_err(io_err)
        }
    }
}

fn common_of(cmd: &Command) -> &CommonArgs {
    match cmd {
        Command::Trajectory(a) | Command::Steady(a) | Command::Thermal(a) => a,
        Command::Negativity(a) => &a.common,
        Command::Sweep(a) => &a.common,
        Command::Validate(a) => &a.common,
    }
}

fn run(cmd: Command) -> Result<u8, Failure> {
    let pool = pool(config::resolve(common_of(&cmd))?.jobs)?;
    pool.install(|| {
        let (table, cfg) = match &cmd {
            Command::Trajectory(a) => commands::trajectory(a)?,
            Command::Steady(a) => commands::steady(a)?,
            Command::Negativity(a) => commands::negativity_cmd(a)?,
            Command::Sweep(a) => commands::sweep(a)?,
            Command::Thermal(a) => commands::thermal(a)?,
            Command::Validate(a) => {
                let v = commands::validate_cmd(a)?;
                for w in &v.warnings {
                    eprintln!("warning: {w}");
                }
                emit(&v.table, &v.config)?;
                return Ok(if v.failed { EXIT_VALIDATION } else { 0 });
            }
        };
        emit(&table, &cfg)?;
        Ok(0)
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
