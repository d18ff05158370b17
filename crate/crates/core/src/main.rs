//! Batch CLI over the scenario commands.
//!
//! Exit codes: 0 success (and check pass), 1 check failure, 2 input error,
//! 3 numerical error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use landauq::commands::{run_check, run_orbit, run_pairs, run_residual, run_spectrum};
use landauq::modes::PairPolicy;
use landauq::scenario::{parse_scenario, Scenario};
use landauq::Error;

#[derive(Parser)]
#[command(
    name = "landauq",
    about = "Quantized cyclotron orbits, Klein-Gordon mode spectra and their consistency checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// Scenario file (flat `key = value` lines).
    #[arg(long)]
    config: PathBuf,
    /// Output path; defaults to the scenario's `output.path`, else stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override the scenario's pair policy.
    #[arg(long)]
    policy: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form orbit table for every n in the scenario.
    Orbit(RunArgs),
    /// Pair frequencies, the first-order ladder and particle energies.
    Spectrum(RunArgs),
    /// Enumerated counterpropagating pairs.
    Pairs(RunArgs),
    /// Full consistency suite; nonzero exit if any gate fails.
    Check(RunArgs),
    /// Field-equation residual convergence study per mode.
    Residual(RunArgs),
}

fn load(args: &RunArgs) -> Result<Scenario, Error> {
    let text = std::fs::read_to_string(&args.config)?;
    let mut scenario = parse_scenario(&text)?;
    if let Some(p) = &args.policy {
        scenario.policy = p.parse::<PairPolicy>()?;
    }
    Ok(scenario)
}

fn emit(args: &RunArgs, scenario: &Scenario, payload: &str) -> Result<(), Error> {
    let target = args.out.clone().or_else(|| scenario.output_path.clone());
    match target {
        Some(path) => std::fs::write(path, payload)?,
        None => print!("{payload}"),
    }
    Ok(())
}

fn run() -> Result<u8, Error> {
    let cli = Cli::parse();
    let (args, which) = match &cli.command {
        Command::Orbit(a) => (a, "orbit"),
        Command::Spectrum(a) => (a, "spectrum"),
        Command::Pairs(a) => (a, "pairs"),
        Command::Check(a) => (a, "check"),
        Command::Residual(a) => (a, "residual"),
    };
    let scenario = load(args)?;
    match which {
        "orbit" => emit(args, &scenario, &run_orbit(&scenario)?)?,
        "spectrum" => emit(args, &scenario, &run_spectrum(&scenario)?)?,
        "pairs" => emit(args, &scenario, &run_pairs(&scenario)?)?,
        "residual" => emit(args, &scenario, &run_residual(&scenario)?)?,
        "check" => {
            let doc = run_check(&scenario)?;
            emit(args, &scenario, &doc.to_json())?;
            if !doc.pass {
                eprintln!("check failed: {}", doc.failed_gates.join(", "));
                return Ok(1);
            }
        }
        _ => unreachable!(),
    }
    Ok(0)
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
