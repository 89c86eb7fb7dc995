//! Command-line front end: constraint reports, time series, parameter grids
//! and time-scale summaries for the damped quantum oscillator.

pub mod commands;
pub mod config;
pub mod csv;
pub mod error;

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{Assignments, RunConfig};
use crate::error::{CliError, CliResult};

/// Environment variable capping the grid worker threads (`0` = automatic).
pub const THREADS_ENV: &str = "LINDBLAD_OSC_THREADS";

#[derive(Debug, Parser)]
#[command(name = "lindblad-osc", version, about = "Damped quantum harmonic oscillator in the Lindblad theory")]
pub struct Cli {
    /// Flat `key = value` configuration file.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Output file (default: stdout).
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Print the resolved configuration and exit.
    #[arg(long, global = true)]
    pub dump_config: bool,

    #[command(flatten)]
    pub overrides: Overrides,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum Command {
    /// Check the complete-positivity and thermal-bath constraints.
    Validate,
    /// Covariances and uncertainty functions over the time grid (CSV).
    Series,
    /// Uncertainty functions over time x one swept parameter (CSV).
    Grid,
    /// Decoherence and relaxation time scales and regime boundaries.
    Timescales,
}

macro_rules! overrides {
    ($( $field:ident => $key:literal, $long:literal; )*) => {
        /// Per-key overrides of the configuration file; flags win.
        #[derive(Debug, Default, Args)]
        pub struct Overrides {
            $(
                #[arg(long = $long, global = true, allow_hyphen_values = true, value_name = "VALUE")]
                pub $field: Option<String>,
            )*
        }

        impl Overrides {
            pub fn assignments(&self) -> CliResult<Assignments> {
                let mut a = Assignments::default();
                $(
                    if let Some(v) = &self.$field {
                        a.insert($key, v)?;
                    }
                )*
                Ok(a)
            }
        }
    };
}

overrides! {
    omega => "omega", "omega";
    lambda => "lambda", "lambda";
    mu => "mu", "mu";
    delta => "delta", "delta";
    r => "r", "r";
    coth_eps => "coth_eps", "coth-eps";
    temperature => "T", "T";
    hbar => "hbar", "hbar";
    mass => "mass", "mass";
    k => "k", "k";
    t_start => "t_start", "t-start";
    t_end => "t_end", "t-end";
    n_points => "n_points", "n-points";
    sweep => "sweep", "sweep";
    sweep_min => "sweep_min", "sweep-min";
    sweep_max => "sweep_max", "sweep-max";
    sweep_n => "sweep_n", "sweep-n";
    format => "format", "format";
    equilibrium_multiple => "equilibrium_multiple", "equilibrium-multiple";
    classical_coth => "classical_coth", "classical-coth";
}

impl Cli {
    /// Configuration file overlaid with the command-line flags.
    pub fn resolve_config(&self) -> CliResult<RunConfig> {
        let file = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
                Assignments::parse(&text)?
            }
            None => Assignments::default(),
        };
        let mut flags = self.overrides.assignments()?;
        if let Some(out) = &self.out {
            let out = out
                .to_str()
                .ok_or_else(|| CliError::usage("out", "path is not valid UTF-8"))?;
            flags.insert("out", out)?;
        }
        RunConfig::from_assignments(&file.overlay(&flags))
    }
}

/// Worker count from [`THREADS_ENV`]; unset or `0` means automatic.
pub fn threads_from_env() -> CliResult<usize> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{THREADS_ENV} must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(0),
    }
}

fn execute(cli: &Cli, stdout: &mut dyn Write) -> CliResult<i32> {
    let cfg = cli.resolve_config()?;
    if cli.dump_config {
        stdout.write_all(cfg.dump().as_bytes())?;
        return Ok(0);
    }
    let command = cli
        .command
        .ok_or_else(|| CliError::Usage("no subcommand given (validate, series, grid or timescales)".to_string()))?;
    let threads = match command {
        Command::Grid => threads_from_env()?,
        _ => 0,
    };
    let mut file;
    let out: &mut dyn Write = match &cfg.out {
        Some(path) => {
            file = BufWriter::new(File::create(path)?);
            &mut file
        }
        None => stdout,
    };
    let code = match command {
        Command::Validate => commands::cmd_validate(&cfg, out)?,
        Command::Series => commands::cmd_series(&cfg, out).map(|_| 0)?,
        Command::Grid => commands::cmd_grid(&cfg, threads, out).map(|_| 0)?,
        Command::Timescales => commands::cmd_timescales(&cfg, out).map(|_| 0)?,
    };
    out.flush()?;
    Ok(code)
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code: 0 success, 1 constraint failure, 2 usage error.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render();
            if code == 0 {
                let _ = write!(stdout, "{rendered}");
            } else {
                let _ = write!(stderr, "{rendered}");
            }
            return if code == 0 { 0 } else { 2 };
        }
    };
    match execute(&cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "lindblad-osc: {e}");
            e.exit_code()
        }
    }
}
