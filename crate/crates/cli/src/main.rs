use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nls_imethod::experiments::{
    checkpoint_summary, checkpoint_table, parse_config, run_almost_conservation_sweep, run_checks,
    run_scattering_cauchy, run_simulation, run_thresholds, CheckKind, Report, RunConfig,
};
use nls_imethod::Error;

/// Pseudospectral NLS laboratory: thresholds, simulations, cutoff sweeps,
/// scattering diagnostics and inequality checks.
#[derive(Parser, Debug)]
#[command(name = "nls-lab", version)]
struct Cli {
    /// Run configuration (`key = value` lines); defaults when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Report destination; stdout when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Overrides the config seed.
    #[arg(long, global = true, value_name = "U64")]
    seed: Option<u64>,
    /// Worker threads for parallel sweeps.
    #[arg(long, global = true, value_name = "K")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Regularity thresholds for the configured nonlinearity.
    Thresholds,
    /// One trajectory with per-instant diagnostics.
    Simulate,
    /// Modified-energy drift against the cutoff N.
    SweepN,
    /// Cauchy differences of the interaction representation.
    Scatter,
    /// Inequality checks; all configured checks when no selector is given.
    Check {
        #[arg(value_enum)]
        which: Option<CheckSelector>,
    },
    /// Checkpoint utilities.
    Checkpoint {
        #[command(subcommand)]
        action: CheckpointAction,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CheckSelector {
    Bernstein,
    Sandwich,
    Dispersive,
    Morawetz,
    Commutator,
}

impl From<CheckSelector> for CheckKind {
    fn from(s: CheckSelector) -> Self {
        match s {
            CheckSelector::Bernstein => CheckKind::Bernstein,
            CheckSelector::Sandwich => CheckKind::Sandwich,
            CheckSelector::Dispersive => CheckKind::Dispersive,
            CheckSelector::Morawetz => CheckKind::Morawetz,
            CheckSelector::Commutator => CheckKind::Commutator,
        }
    }
}

#[derive(Subcommand, Debug)]
enum CheckpointAction {
    /// Header fields and basic measures.
    Inspect { path: PathBuf },
    /// Grid values as CSV.
    Convert { path: PathBuf },
}

fn load_config(cli: &Cli) -> nls_imethod::Result<RunConfig> {
    let mut cfg = match &cli.config {
        Some(p) => parse_config(p)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    Ok(cfg)
}

fn execute(cli: &Cli) -> nls_imethod::Result<Report> {
    let cfg = load_config(cli)?;
    Ok(match &cli.command {
        Command::Thresholds => run_thresholds(&cfg)?.0,
        Command::Simulate => run_simulation(&cfg)?.0,
        Command::SweepN => run_almost_conservation_sweep(&cfg)?.0,
        Command::Scatter => run_scattering_cauchy(&cfg)?.0,
        Command::Check { which } => {
            let mut cfg = cfg;
            if let Some(w) = which {
                cfg.checks = vec![(*w).into()];
            }
            run_checks(&cfg)?.0
        }
        Command::Checkpoint { action } => match action {
            CheckpointAction::Inspect { path } => checkpoint_summary(path)?,
            CheckpointAction::Convert { path } => checkpoint_table(path)?,
        },
    })
}

fn emit(report: &Report, cli: &Cli) -> nls_imethod::Result<()> {
    let target = cli.out.clone().or_else(|| match &cli.config {
        Some(p) => parse_config(p).ok().and_then(|c| c.out),
        None => None,
    });
    match target {
        Some(path) => nls_imethod::experiments::write_report(report, &path),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            report.write_to(&mut lock)?;
            lock.flush()?;
            Ok(())
        }
    }
}

fn exit_code(err: &Error) -> u8 {
    if err.is_numerical_abort() {
        3
    } else {
        2
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            eprintln!("nls-lab: cannot set up {k} workers: {e}");
            return ExitCode::from(2);
        }
    }
    let result = execute(&cli).and_then(|report| emit(&report, &cli).map(|_| report.verdict));
    match result {
        Ok(Some(false)) => {
            eprintln!("nls-lab: FAIL");
            ExitCode::from(1)
        }
        Ok(verdict) => {
            if verdict == Some(true) {
                eprintln!("nls-lab: PASS");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("nls-lab: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
