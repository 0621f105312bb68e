//! `cqed`: command-line front end for the cavity-QED library. Each
//! subcommand runs one sweep job and writes a deterministic CSV artifact
//! with a metadata trailer.

mod artifact;
mod config;
mod jobs;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cqed::error::CqedError;

use config::JobConfig;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("convergence error: {0}")]
    Convergence(String),
    #[error("solver error: {0}")]
    Solver(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Convergence(_) => 3,
            CliError::Solver(_) | CliError::Internal(_) => 4,
            CliError::Io(_) => 5,
        }
    }
}

impl From<CqedError> for CliError {
    fn from(e: CqedError) -> Self {
        let text = e.to_string();
        match e {
            CqedError::InvalidParameter { .. }
            | CqedError::DimensionMismatch(_)
            | CqedError::SpaceMismatch(_)
            | CqedError::BadSiteKind { .. } => CliError::Config(text),
            CqedError::Convergence(_) | CqedError::Truncation(_) => CliError::Convergence(text),
            _ => CliError::Solver(text),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "cqed", version, about = "Cavity-QED model sweeps and open-system steady states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Eigenvalue sweep of the Rabi or Jaynes-Cummings model over coupling.
    Spectrum(JobArgs),
    /// Ground-state photon number versus coupling, with the quadratic fit.
    Vacuum(JobArgs),
    /// Gauge-benchmark sweep: full, Coulomb-truncated, and dipole-truncated gaps.
    Gauge(JobArgs),
    /// Steady-state emission versus coupling for each master-equation kind.
    Steady(JobArgs),
    /// Liouvillian spectral gap versus coupling (dressed master equation).
    Gap(JobArgs),
    /// Coupling-regime classification table for reference experimental setups.
    Regime(JobArgs),
    /// Lindblad time evolution of a one-photon initial state.
    Evolve(JobArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Spectrum(_) => "spectrum",
            Command::Vacuum(_) => "vacuum",
            Command::Gauge(_) => "gauge",
            Command::Steady(_) => "steady",
            Command::Gap(_) => "gap",
            Command::Regime(_) => "regime",
            Command::Evolve(_) => "evolve",
        }
    }

    fn args(&self) -> &JobArgs {
        match self {
            Command::Spectrum(a)
            | Command::Vacuum(a)
            | Command::Gauge(a)
            | Command::Steady(a)
            | Command::Gap(a)
            | Command::Regime(a)
            | Command::Evolve(a) => a,
        }
    }
}

#[derive(Args, Debug)]
struct JobArgs {
    /// TOML configuration file; defaults apply when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output CSV path; wins over the config's `output` entry.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override the photon-space truncation.
    #[arg(long)]
    n_fock: Option<usize>,
    /// Coarse preset for quick runs (n_fock = 20, n_points = 512).
    #[arg(long)]
    fast: bool,
}

fn load_config(args: &JobArgs) -> Result<JobConfig, CliError> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                CliError::Io(format!("cannot read {}: {e}", path.display()))
            })?;
            config::parse_config(&text)?
        }
        None => JobConfig::default(),
    };
    if args.fast {
        cfg.numerics.n_fock = 20;
        cfg.numerics.n_points = 512;
    }
    if let Some(nf) = args.n_fock {
        cfg.numerics.n_fock = nf;
    }
    config::validate(&cfg)?;
    Ok(cfg)
}

fn output_path(args: &JobArgs, cfg: &JobConfig, job: &str) -> PathBuf {
    if let Some(out) = &args.out {
        return out.clone();
    }
    if let Some(out) = &cfg.output {
        return PathBuf::from(out);
    }
    if let Ok(dir) = std::env::var("CQED_OUT_DIR") {
        return PathBuf::from(dir).join(format!("{job}.csv"));
    }
    PathBuf::from(format!("{job}.csv"))
}

fn run(cli: &Cli) -> Result<PathBuf, CliError> {
    let args = cli.command.args();
    let job = cli.command.name();
    let cfg = load_config(args)?;
    let art = jobs::run_job(job, &cfg)?;
    let path = output_path(args, &cfg, job);
    art.write(&path)?;
    Ok(path)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(path) => {
            println!("wrote {}", path.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
