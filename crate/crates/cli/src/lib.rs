//! Command-line front end: model curves, optimizer sweeps, simulations and
//! scheduling advice from JSON configs or built-in figure presets.

pub mod commands;
pub mod config;
pub mod format;
pub mod presets;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use mcspeedup_core::{Error, Execution};
use serde::de::DeserializeOwned;

use presets::Preset;

/// Failure classes, each with its own process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Invalid config or parameters (exit code 2).
    Config(String),
    /// Solver, simulation or output failure (exit code 3).
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Failure(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Failure(m) => write!(f, "failure: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::Unsupported { .. } | Error::Config(_) | Error::Input(_) => {
                CliError::Config(e.to_string())
            }
            Error::NonFinite { .. } | Error::Simulation(_) | Error::Csv(_) => CliError::Failure(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "mcspeedup", version, about = "Multicore speedup models, optimizer sweeps and simulation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Speedup versus core size for several models and parallel fractions
    Speedup(RunArgs),
    /// Optimal core size and maximum speedup sweeps
    Optimal(RunArgs),
    /// Simulate the workloads over core sizes
    Simulate(RunArgs),
    /// Advise parallel or single-core execution for a workload
    Advise(RunArgs),
    /// Print a built-in preset as a config file
    Preset {
        /// Preset name (fig6 ... fig13)
        name: String,
    },
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// JSON experiment config
    #[arg(long, value_name = "PATH", conflicts_with = "preset", required_unless_present = "preset")]
    pub config: Option<PathBuf>,

    /// Built-in figure preset instead of a config file
    #[arg(long, value_name = "NAME")]
    pub preset: Option<String>,

    /// Output directory (created if missing)
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,

    /// Evaluate sweeps on the calling thread only
    #[arg(long)]
    pub sequential: bool,
}

impl RunArgs {
    fn execution(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::default()
        }
    }
}

/// Parses a JSON config; messages carry the line and column of the problem.
pub fn parse_config<T: DeserializeOwned>(text: &str, origin: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Config(format!("{origin}: {e}")))
}

fn load<T: DeserializeOwned>(
    args: &RunArgs,
    command: &str,
    from_preset: impl Fn(Preset) -> Option<T>,
) -> Result<T, CliError> {
    if let Some(name) = &args.preset {
        let preset = presets::lookup(name)?;
        let owner = preset.command();
        return from_preset(preset)
            .ok_or_else(|| CliError::Config(format!("preset `{name}` belongs to the `{owner}` command, not `{command}`")));
    }
    let path = args.config.as_ref().expect("clap requires --config or --preset");
    let text = fs::read_to_string(path).map_err(|e| CliError::Config(format!("reading {}: {e}", path.display())))?;
    parse_config(&text, &path.display().to_string())
}

fn prepare_out(out: &Path) -> Result<(), CliError> {
    fs::create_dir_all(out).map_err(|e| CliError::Failure(format!("creating {}: {e}", out.display())))
}

/// Runs one command, returning the lines to print on success.
pub fn run(cli: Cli) -> Result<Vec<String>, CliError> {
    let mut lines = Vec::new();
    let written = match cli.command {
        Command::Preset { name } => {
            return Ok(vec![presets::lookup(&name)?.to_json()]);
        }
        Command::Speedup(args) => {
            let cfg = load(&args, "speedup", |p| match p {
                Preset::Speedup(c) => Some(c),
                _ => None,
            })?;
            cfg.validate()?;
            prepare_out(&args.out)?;
            commands::cmd_speedup(&cfg, &args.out, args.execution())?
        }
        Command::Optimal(args) => {
            let cfg = load(&args, "optimal", |p| match p {
                Preset::Optimal(c) => Some(c),
                _ => None,
            })?;
            cfg.validate()?;
            prepare_out(&args.out)?;
            commands::cmd_optimal(&cfg, &args.out, args.execution())?
        }
        Command::Simulate(args) => {
            let cfg = load(&args, "simulate", |p| match p {
                Preset::Simulate(c) => Some(c),
                _ => None,
            })?;
            cfg.validate()?;
            prepare_out(&args.out)?;
            let (written, summaries) = commands::cmd_simulate(&cfg, &args.out, args.execution())?;
            for s in &summaries {
                lines.push(format!(
                    "{}: t1_serial={} f2_measured={} peak r={} speedup={}",
                    s.workload,
                    s.t1_serial,
                    format::sig10(s.f2_measured),
                    s.peak_r,
                    format::sig10(s.peak_speedup)
                ));
                if !s.skipped_core_sizes.is_empty() {
                    lines.push(format!(
                        "{}: skipped core sizes {:?} (core count cannot be partitioned)",
                        s.workload, s.skipped_core_sizes
                    ));
                }
            }
            written
        }
        Command::Advise(args) => {
            let cfg = load(&args, "advise", |_| None)?;
            prepare_out(&args.out)?;
            let (written, advice) = commands::cmd_advise(&cfg, &args.out)?;
            lines.push(commands::describe_advice(&advice));
            written
        }
    };
    lines.extend(written.iter().map(|p| format!("wrote {}", p.display())));
    Ok(lines)
}
