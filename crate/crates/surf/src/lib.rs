//! Command-line front end for `spacelike-core`: run configuration, the
//! `point`, `field`, `umbilics`, `lines` and `selftest` commands, and their
//! CSV/JSON output.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod parallel;
pub mod selftest;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use config::RunConfig;
pub use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "spacelike-surf", version, about = "Curvature ellipses and line fields of spacelike surfaces in R^{3,1}")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct ConfigArgs {
    /// TOML run configuration.
    #[arg(short, long)]
    pub config: PathBuf,
    /// Override a config key, e.g. `--set grid.nu=64`. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub set: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Invariants, class, ellipse and directions at one parameter point.
    Point {
        #[command(flatten)]
        cfg: ConfigArgs,
        #[arg(allow_negative_numbers = true)]
        u: f64,
        #[arg(allow_negative_numbers = true)]
        v: f64,
    },
    /// Invariants on the configured grid.
    Field {
        #[command(flatten)]
        cfg: ConfigArgs,
    },
    /// Umbilics of the configured normal field, with the Poincaré–Hopf sum on
    /// closed surfaces.
    Umbilics {
        #[command(flatten)]
        cfg: ConfigArgs,
    },
    /// Trace lines of the configured kind from each seed.
    Lines {
        #[command(flatten)]
        cfg: ConfigArgs,
    },
    /// Run the randomised property suites.
    Selftest {
        /// 10² samples per suite and coarser grids.
        #[arg(long)]
        quick: bool,
        #[arg(long, default_value_t = selftest::DEFAULT_SEED)]
        seed: u64,
    },
}

fn run_command(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let pool = parallel::build_pool(parallel::threads_from_env()?)?;
    let load = |a: &ConfigArgs| RunConfig::load(&a.config, &a.set);
    match cmd {
        Command::Point { cfg, u, v } => {
            let cfg = load(&cfg)?;
            commands::cmd_point(&cfg, u, v, out)
        }
        Command::Field { cfg } => {
            let cfg = load(&cfg)?;
            commands::cmd_field(&cfg, &pool, out).map(|_| ())
        }
        Command::Umbilics { cfg } => {
            let cfg = load(&cfg)?;
            commands::cmd_umbilics(&cfg, &pool, out).map(|_| ())
        }
        Command::Lines { cfg } => {
            let cfg = load(&cfg)?;
            commands::cmd_lines(&cfg, &pool, out, err).map(|_| ())
        }
        Command::Selftest { quick, seed } => {
            let plan = if quick { selftest::SelftestPlan::QUICK } else { selftest::SelftestPlan::FULL };
            let results = selftest::run_all(plan, seed, &pool, out)?;
            let failed: Vec<&str> = results.iter().filter(|r| !r.passed()).map(|r| r.name).collect();
            if failed.is_empty() {
                Ok(())
            } else {
                Err(CliError::SelftestFailed(failed.join(", ")))
            }
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { error::EXIT_CONFIG } else { error::EXIT_OK };
        }
    };
    match run_command(cli.command, out, err) {
        Ok(()) => error::EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
