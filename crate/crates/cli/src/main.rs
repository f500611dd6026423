//! `seqdefense` command-line front end.
//!
//! Output schemas (CSV columns; JSONL uses the same keys):
//!
//! * `simulate`: `N, mean_pct, ci_lo, ci_hi, analytic_pct, asymptotic_pct`, one
//!   row per prefix length; with `--out F` also `F.trials.<ext>` with
//!   `trial, seed, N, pct`.
//! * `analytic`: `N, expected_resets, percentage`, last row `N = inf`.
//! * `sweep`: `<axis1>, <axis2>, feasible, theta_max, p_star, pct_<N>..., pct_inf`.
//! * `verify`: `n_games, n_compared, n_agree, agreement, max_capture_discrepancy,
//!   max_breach_defender_residual, dt, eps_capture, passed`.
//! * `trace`: `# key=value` metadata lines, then `t, x_a, y_a, x_d, y_d, phase`.

use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod options;
mod output;

use options::Options;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, config or parameters.
    Invalid(String),
    /// The kinematic replay disagreed with the event-level engine.
    Verification(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Invalid(_) | CliError::Io(_) => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "seqdefense",
    version,
    about = "Sequential perimeter-defense simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Seeded Monte Carlo sessions. Columns: N, mean_pct, ci_lo, ci_hi, analytic_pct,
    /// asymptotic_pct; per-trial prefixes go to <out>.trials.<ext>.
    Simulate(Options),
    /// Expected resets and capture percentage per horizon. Columns: N, expected_resets, percentage.
    Analytic(Options),
    /// Two-parameter grid. Columns: <axis1>, <axis2>, feasible, theta_max, p_star, pct_<N>..., pct_inf.
    Sweep(Options),
    /// Replays games kinematically and compares with the event-level engine; exit 1 on disagreement.
    Verify(Options),
    /// One game's trajectory. Columns: t, x_a, y_a, x_d, y_d, phase, after `# key=value` metadata.
    Trace(Options),
}

type Handler = fn(&Options) -> Result<(), CliError>;

fn run(cli: Cli) -> Result<(), CliError> {
    let (opts, f): (Options, Handler) = match cli.command {
        Command::Simulate(o) => (o, commands::simulate),
        Command::Analytic(o) => (o, commands::analytic),
        Command::Sweep(o) => (o, commands::sweep_cmd),
        Command::Verify(o) => (o, commands::verify),
        Command::Trace(o) => (o, commands::trace),
    };
    let opts = opts.resolve().map_err(CliError::Invalid)?;
    f(&opts)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Invalid(m) => eprintln!("error: {m}"),
                CliError::Verification(m) => eprintln!("verification failed: {m}"),
                CliError::Io(m) => eprintln!("i/o error: {m}"),
            }
            ExitCode::from(e.exit_code())
        }
    }
}
