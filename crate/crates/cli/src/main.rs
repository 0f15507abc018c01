//! `hzlab`: command-line frontend for the graph workbench.
//!
//! Exit codes: 0 verified or success, 2 falsified, 3 vacuous, 1 usage or
//! capacity error.

mod commands;
mod output;
mod settings;

use clap::{Args, Parser, Subcommand};
use settings::{Format, Settings};
use std::path::PathBuf;
use std::process::ExitCode;

/// Environment variable holding the worker count of the parallel sweeps.
pub const WORKERS_ENV: &str = "HZLAB_WORKERS";

#[derive(Parser, Debug)]
#[command(name = "hzlab", version, about = "Exact graph invariants and exhaustive claim checkers")]
pub struct Cli {
    /// Print every registered claim: id, anchor, module.
    #[arg(long)]
    pub list: bool,
    /// Key-value config file whose keys mirror the long flags.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Write output here (atomically) instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads for parallel sweeps; overrides the environment variable.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Args, Debug, Default, Clone)]
pub struct RunArgs {
    /// Size cap, interpreted per claim (see `--list` and the report's `size_meaning`).
    #[arg(long)]
    pub max_n: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Random instances per randomized claim.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Chain steps per state space.
    #[arg(long)]
    pub steps: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Degree-based and spectral indices of a graph.
    Indices {
        graph: PathBuf,
        /// Every standard index (the default).
        #[arg(long, conflicts_with = "index")]
        all: bool,
        /// One index: hm1, hm2, f, so, kg, mkg, ee, exp-hm1, exp-hm2, exp-mkg, or m:<alpha>.
        #[arg(long)]
        index: Option<String>,
        /// Use the literal KG formula instead of the corrected one.
        #[arg(long)]
        kg_literal: bool,
    },
    /// Exact spectral moments S_0..S_K.
    Moments {
        graph: PathBuf,
        #[arg(long)]
        kmax: usize,
    },
    /// S-order comparison of two graphs of the same order.
    Sorder { first: PathBuf, second: PathBuf },
    #[command(subcommand)]
    Trees(commands::TreesCmd),
    #[command(subcommand)]
    Bip(commands::BipCmd),
    #[command(subcommand)]
    Cover(commands::CoverCmd),
    #[command(subcommand)]
    Competition(commands::CompetitionCmd),
    #[command(subcommand)]
    Chain(commands::ChainCmd),
    /// Run one claim checker and print its report.
    Verify {
        #[arg(long)]
        claim: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run every registered claim checker, or the `--claims` subset.
    VerifyAll {
        /// Comma-separated claim ids; an empty list is vacuous.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        claims: Option<Vec<String>>,
        #[command(flatten)]
        run: RunArgs,
    },
}

/// Flags and config file merged; flags win.
fn settings(cli: &Cli) -> anyhow::Result<Settings> {
    let file = match &cli.config {
        Some(p) => Settings::load(p)?,
        None => Settings::default(),
    };
    let mut flags = Settings { out: cli.out.clone(), format: cli.format, workers: cli.workers, ..Settings::default() };
    match &cli.command {
        Some(Command::Verify { run, .. }) => fill_run(&mut flags, run),
        Some(Command::VerifyAll { run, claims }) => {
            fill_run(&mut flags, run);
            flags.claims = claims.clone();
        }
        _ => {}
    }
    Ok(file.overlay(flags))
}

fn fill_run(s: &mut Settings, run: &RunArgs) {
    s.max_n = run.max_n;
    s.seed = run.seed;
    s.samples = run.samples;
    s.steps = run.steps;
}

fn configure_workers(s: &Settings) -> anyhow::Result<()> {
    let from_env = match std::env::var(WORKERS_ENV) {
        Ok(v) => Some(v.trim().parse::<usize>().map_err(|_| anyhow::anyhow!("{WORKERS_ENV}=`{v}` is not a worker count"))?),
        Err(_) => None,
    };
    if let Some(n) = s.workers.or(from_env) {
        if n == 0 {
            anyhow::bail!("the worker count must be at least 1");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    let s = settings(&cli)?;
    configure_workers(&s)?;
    if cli.list {
        return commands::list(&s);
    }
    match cli.command {
        Some(cmd) => commands::dispatch(cmd, &s),
        None => anyhow::bail!("no subcommand given; try --help"),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
