//! `curvkit`: batch verification front end for the curve kernels.

mod cmd;
mod curve_args;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Result;
use clap::{Parser, Subcommand};
use serde::Serialize;

use cmd::{explore, frenet, generate, indicatrix, iterate, minval, verify, Run};
use output::{ManifestFields, Outputs};

#[derive(Parser, Debug)]
#[command(
    name = "curvkit",
    version,
    about = "Curvature functionals of closed curves in R^4"
)]
struct Cli {
    /// Directory for reports, sample dumps and the run manifest
    #[arg(
        long,
        global = true,
        env = "CURVKIT_OUT_DIR",
        default_value = "curvkit-out"
    )]
    out_dir: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(untagged)]
enum Command {
    /// Sample a curve with its speed and curvatures
    Generate(generate::GenerateArgs),
    /// Frenet frames and curvatures at chosen parameters
    Frenet(frenet::FrenetArgs),
    /// Osculating indicatrix in the Plücker embedding
    Indicatrix(indicatrix::IndicatrixArgs),
    /// Check closed forms, indicatrix properties and inequalities
    Verify(verify::VerifyArgs),
    /// Repeat the indicatrix transform and tabulate the functional
    Iterate(iterate::IterateArgs),
    /// Search trigonometric curves for a lower mixed functional
    Explore(explore::ExploreArgs),
    /// Smallest admissible value over winding pairs
    Minval(minval::MinvalArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Generate(_) => "generate",
            Command::Frenet(_) => "frenet",
            Command::Indicatrix(_) => "indicatrix",
            Command::Verify(_) => "verify",
            Command::Iterate(_) => "iterate",
            Command::Explore(_) => "explore",
            Command::Minval(_) => "minval",
        }
    }

    fn run(&self, out: &mut Outputs) -> Result<Run> {
        match self {
            Command::Generate(a) => generate::run(a, out),
            Command::Frenet(a) => frenet::run(a, out),
            Command::Indicatrix(a) => indicatrix::run(a, out),
            Command::Verify(a) => verify::run(a, out),
            Command::Iterate(a) => iterate::run(a, out),
            Command::Explore(a) => explore::run(a, out),
            Command::Minval(a) => minval::run(a, out),
        }
    }
}

fn execute(cli: &Cli) -> Result<u8> {
    let start = Instant::now();
    let mut out = Outputs::new(&cli.out_dir)?;
    let run = cli.command.run(&mut out)?;
    let code = run.status.code();
    out.finish(
        ManifestFields {
            command: cli.command.name().to_string(),
            parameters: serde_json::to_value(&cli.command)?,
            tolerances: run.tolerances,
            seed: run.seed,
        },
        start.elapsed(),
        code,
    )?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
