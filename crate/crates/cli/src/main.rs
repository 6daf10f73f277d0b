use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use twistgeom_cli::runner::{self, Settings};
use twistgeom_cli::world::World;
use twistgeom_cli::{derive, scenario};

#[derive(Parser)]
#[command(name = "twistgeom", version, about = "Verify twisted Jacobi, contact and groupoid structures from JSON scenarios")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Sampling {
    /// Absolute tolerance of sampled zero tests.
    #[arg(long)]
    tol: Option<f64>,
    /// Number of sample points.
    #[arg(long)]
    samples: Option<usize>,
    /// Seed of the sample points.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the checks of a scenario; exit 0 iff all pass.
    Check {
        scenario: PathBuf,
        #[command(flatten)]
        sampling: Sampling,
        /// Write one JSON object per check to this file.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Record wall-clock milliseconds (reports are no longer byte-identical).
        #[arg(long)]
        timing: bool,
        /// Print every report in full.
        #[arg(long, short)]
        verbose: bool,
    },
    /// Print a derived structure as a scenario.
    Derive {
        scenario: PathBuf,
        object: String,
        /// reeb, contact_bivector, jacobi, poissonize, pair-groupoid or suspend.
        construction: String,
        #[command(flatten)]
        sampling: Sampling,
    },
}

fn settings(s: Sampling, timing: bool) -> Settings {
    Settings { tol: s.tol, samples: s.samples, seed: s.seed, timing }
}

fn check(path: PathBuf, settings: Settings, json: Option<PathBuf>, verbose: bool) -> Result<bool> {
    let s = scenario::load(&path)?;
    let outcomes = runner::run(&s, &settings)?;
    print!("{}", runner::render(&outcomes, verbose, settings.timing));
    if let Some(out) = json {
        let mut f = std::fs::File::create(&out).with_context(|| format!("cannot write {}", out.display()))?;
        for o in &outcomes {
            writeln!(f, "{}", runner::json_line(o))?;
        }
    }
    Ok(outcomes.iter().all(|o| o.passed()))
}

fn derive(path: PathBuf, object: &str, construction: &str, settings: Settings) -> Result<()> {
    let s = scenario::load(&path)?;
    let cfg = settings.config();
    let world = World::build(&s, &cfg)?;
    let out = derive::derive(&s, &world, object, construction, &cfg)?;
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check { scenario, sampling, json, timing, verbose } => check(scenario, settings(sampling, timing), json, verbose),
        Command::Derive { scenario, object, construction, sampling } => derive(scenario, &object, &construction, settings(sampling, false)).map(|_| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
