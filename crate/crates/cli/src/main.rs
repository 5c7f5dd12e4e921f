mod commands;
mod config;
mod error;
mod output;
mod svg;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::commands::Outcome;
use crate::config::ScenarioConfig;
use crate::error::CliError;
use crate::output::{emit, Format};

/// Particle paths beneath linear water waves, and peakon profiles.
#[derive(Debug, Parser)]
#[command(name = "wavepaths", version)]
struct Cli {
    /// Scenario file of `key = value` lines.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Write the table here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Also write an SVG plot.
    #[arg(long, global = true, value_name = "PATH")]
    svg: Option<PathBuf>,

    /// Override a config key; repeatable.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    overrides: Vec<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample the linear wave field on an (x, z, t) grid.
    Field,
    /// Integrate a particle path numerically.
    Simulate,
    /// Sample the closed-form particle path on both sides of t = 0.
    Analytic {
        /// Add the path-system residual columns.
        #[arg(long)]
        residuals: bool,
    },
    /// Sample the moving-frame vector field.
    Phase,
    /// Tabulate a peakon or shock-peakon profile.
    Peakon,
    /// Run the verification suites; exits 1 on any failure.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, hide = true, default_value_t = 0.0, allow_negative_numbers = true)]
        inject_speed_perturbation: f64,
    },
}

fn load_config(cli: &Cli) -> Result<ScenarioConfig, CliError> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
            ScenarioConfig::parse(&text)?
        }
        None => ScenarioConfig::default(),
    };
    for o in &cli.overrides {
        cfg.apply_override(o)?;
    }
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let cfg = load_config(cli)?;
    let outcome: Outcome = match &cli.command {
        Command::Field => commands::field_cmd(&cfg)?,
        Command::Simulate => commands::simulate_cmd(&cfg)?,
        Command::Analytic { residuals } => commands::analytic_cmd(&cfg, *residuals)?,
        Command::Phase => commands::phase_cmd(&cfg)?,
        Command::Peakon => commands::peakon_cmd(&cfg)?,
        Command::Verify { suite, inject_speed_perturbation } => {
            if cli.svg.is_some() {
                return Err(CliError::Usage("verify does not produce a plot".into()));
            }
            let v = commands::verify_cmd(&cfg, suite, *inject_speed_perturbation)?;
            emit(&v.json, cli.out.as_deref())?;
            if !v.passed {
                for f in &v.failures {
                    eprintln!("FAILED {f}");
                }
                return Err(CliError::VerificationFailed(format!("{} check(s) failed", v.failures.len())));
            }
            return Ok(());
        }
    };
    emit(&outcome.table.render(cli.format), cli.out.as_deref())?;
    if let (Some(path), Some(plot)) = (&cli.svg, &outcome.plot) {
        emit(&plot.render(), Some(path))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
