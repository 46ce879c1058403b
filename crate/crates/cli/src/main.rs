//! `varbound` — sweeps, verification, and single-instance comparison for
//! variance-based uncertainty bounds.
//!
//! Exit codes: 0 on success, 1 on configuration or input errors, 2 when an
//! invariant check fails beyond tolerance (the output document is still
//! written and the violating row is reported on stderr).

mod commands;
mod output;

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{Format, Outcome, RunError};
use output::{Sink, Tolerances};

#[derive(Parser)]
#[command(
    name = "varbound",
    version,
    about = "Variance-based uncertainty bounds: fixture sweeps, random verification, and bound comparison"
)]
struct Cli {
    /// Output file; stdout when omitted. Relative paths resolve under
    /// $VARBOUND_OUT_DIR when that variable is set. Files are written via a
    /// temporary name and renamed into place.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Tolerance override, repeatable: name=value with name one of
    /// sandwich_rel, identity_rel, saturation_rel, agreement_rel.
    #[arg(long = "tol", global = true, value_name = "NAME=VALUE", value_parser = parse_tol)]
    tol: Vec<(String, f64)>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct SweepArgs {
    /// Number of grid points.
    #[arg(long, default_value_t = 101)]
    grid_points: usize,

    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the embedded two-observable fixture over the split magnitude
    /// |a| in [0, 1]; columns abs_a, sov, lower, upper.
    Fig1 {
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Sweep the embedded four-observable fixture over the state parameter
    /// theta; columns theta, sov, lb, ub, fb, pb, tb1, tbm, tb2.
    Fig2 {
        #[command(flatten)]
        sweep: SweepArgs,

        /// Theta range as two values MIN MAX.
        #[arg(long, num_args = 2, value_names = ["MIN", "MAX"],
              default_values_t = [0.0, std::f64::consts::PI])]
        theta_range: Vec<f64>,
    },
    /// Evaluate every applicable bound for one instance document (JSON on
    /// stdin or --input) and emit a report with sandwich flags.
    Compare {
        /// Instance document; stdin when omitted.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Run the identity, sandwich, and saturation checks over seeded random
    /// instances and emit a JSON summary.
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        instances: usize,
    },
    /// Evaluate full bound-comparison reports over seeded random instances,
    /// including pure-vs-projector-lift agreement, and emit a JSON summary.
    RandomSuite {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        instances: usize,
    },
}

fn parse_tol(raw: &str) -> Result<(String, f64), String> {
    let (name, value) = raw
        .split_once('=')
        .ok_or_else(|| format!("expected NAME=VALUE, got `{raw}`"))?;
    let value: f64 = value
        .parse()
        .map_err(|e| format!("bad tolerance value in `{raw}`: {e}"))?;
    Ok((name.to_string(), value))
}

fn sweep_format(f: OutputFormat) -> Format {
    match f {
        OutputFormat::Csv => Format::Csv,
        OutputFormat::Json => Format::Json,
    }
}

fn check_grid_points(n: usize) -> Result<(), RunError> {
    if n < 2 {
        return Err(RunError::Input(format!(
            "--grid-points must be at least 2, got {n}"
        )));
    }
    Ok(())
}

fn read_input(path: Option<&PathBuf>) -> Result<String, RunError> {
    match path {
        Some(p) => fs::read_to_string(p)
            .map_err(|e| RunError::Input(format!("cannot read {}: {e}", p.display()))),
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| RunError::Input(format!("cannot read stdin: {e}")))?;
            Ok(buf)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, RunError> {
    let mut tols = Tolerances::default();
    tols.apply(&cli.tol).map_err(RunError::Input)?;

    match &cli.command {
        Command::Fig1 { sweep } => {
            check_grid_points(sweep.grid_points)?;
            commands::run_fig1(sweep.grid_points, sweep_format(sweep.format), &tols)
        }
        Command::Fig2 { sweep, theta_range } => {
            check_grid_points(sweep.grid_points)?;
            let (lo, hi) = (theta_range[0], theta_range[1]);
            if !(lo.is_finite() && hi.is_finite()) || hi < lo {
                return Err(RunError::Input(format!(
                    "--theta-range must be nondecreasing finite values, got {lo} {hi}"
                )));
            }
            commands::run_fig2(
                sweep.grid_points,
                (lo, hi),
                sweep_format(sweep.format),
                &tols,
            )
        }
        Command::Compare { input } => {
            let doc = read_input(input.as_ref())?;
            commands::run_compare(&doc)
        }
        Command::Verify { seed, instances } => commands::run_verify(*seed, *instances, &tols),
        Command::RandomSuite { seed, instances } => {
            commands::run_random_suite(*seed, *instances, &tols)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    match run(&cli) {
        Ok(Outcome {
            document,
            violation,
        }) => {
            let sink = Sink::resolve(cli.output.as_deref());
            if let Err(e) = sink.write(&document) {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(1);
            }
            match violation {
                None => ExitCode::SUCCESS,
                Some(msg) => {
                    eprintln!("invariant violation: {msg}");
                    ExitCode::from(2)
                }
            }
        }
        Err(RunError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
