use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use extremal::commands::{self, Command};
use extremal::{CliError, RunConfig};

/// Extremal functions, entire extensions and support localization.
#[derive(Parser, Debug)]
#[command(name = "extremal", version)]
struct Cli {
    /// JSON run configuration; defaults apply when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, value_name = "DIR", default_value = "out")]
    out: PathBuf,
    /// Worker threads; 0 uses one per core.
    #[arg(long, global = true, value_name = "N", default_value_t = 0)]
    threads: usize,
    /// Overrides the seed in the configuration.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Cmd {
    /// Cross norm and its decomposition for each configured point.
    CrossNorm,
    /// Extremal function on the configured points.
    Psi,
    /// Homogeneous capacity of the configured set.
    Capacity,
    /// Entire extension from line data.
    Extend,
    /// Order and type from Taylor coefficients.
    OrderType,
    /// Radon profiles, support intervals and Fourier slice checks.
    Radon,
    /// Support localization from Radon data.
    Locate,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::CrossNorm => Command::CrossNorm,
            Cmd::Psi => Command::Psi,
            Cmd::Capacity => Command::Capacity,
            Cmd::Extend => Command::Extend,
            Cmd::OrderType => Command::OrderType,
            Cmd::Radon => Command::Radon,
            Cmd::Locate => Command::Locate,
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {} threads: {e}", cli.threads)))?;
    let threads = pool.current_num_threads();
    pool.install(|| commands::run(cli.command.into(), &cfg, &cli.out, threads)).map(|_| ())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
