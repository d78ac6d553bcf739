//! Run configuration: defaults, JSON config files, and flag overlay.
//!
//! Every setting can come from three places. Explicit flags win, then the
//! `--config` JSON file, then built-in defaults. The config file is a flat
//! object whose keys mirror [`RunConfig`] field names, with the same text
//! syntax as the flags for interval, format, extension rule, and function.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Deserialize;
use splinedsp_core::analysis::TestFunction;
use splinedsp_core::extend::ExtensionRule;
use splinedsp_core::fixed::FixedPointFormat;
use splinedsp_core::SplineError;

use crate::errors::AppError;

const DEFAULT_H: f64 = 1.0 / 32.0;
const DEFAULT_INTERVAL: (f64, f64) = (0.0, 2.0);
const DEFAULT_BASIS_INTERVAL: (f64, f64) = (-2.5, 2.5);
const DEFAULT_SAMPLES_PER_SEGMENT: usize = 10;
const DEFAULT_PROBES: usize = 1001;

/// Subcommand being executed.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Command {
    Basis,
    Approx,
    Simulate,
    Compare,
    Rom,
}

/// Flags shared by every subcommand. All of them are optional so a config
/// file can supply any subset.
#[derive(clap::Args, Debug, Default)]
pub struct CommonArgs {
    /// Node spacing of the approximation grid.
    #[arg(long, value_name = "H")]
    pub h: Option<f64>,

    /// Approximation interval, written a:b.
    #[arg(long, value_name = "A:B", allow_hyphen_values = true)]
    pub interval: Option<String>,

    /// Output samples per knot interval.
    #[arg(long, value_name = "K")]
    pub k: Option<usize>,

    /// Fixed-point format, written total:frac:s (signed) or total:frac:u.
    #[arg(long, value_name = "T:F:S")]
    pub format: Option<String>,

    /// Boundary extension rule: zero-pad or quadratic.
    #[arg(long, value_name = "RULE")]
    pub extension: Option<String>,

    /// Built-in signal: ln1p, sin, or exp.
    #[arg(long, value_name = "NAME")]
    pub function: Option<String>,

    /// Signal CSV to read instead of a built-in function.
    #[arg(long, value_name = "PATH")]
    pub input: Option<PathBuf>,

    /// Where to write the artifact; stdout when omitted.
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,

    /// Probe count for tables and error sweeps.
    #[arg(long, value_name = "N")]
    pub probes: Option<usize>,

    /// Also write the primary curve as a standalone SVG chart.
    #[arg(long, value_name = "PATH")]
    pub svg: Option<PathBuf>,

    /// JSON config file; explicit flags override its entries.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
}

/// Everything a command run needs after defaults, config file, and flags
/// have been merged.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub input_path: Option<PathBuf>,
    pub output_path: Option<PathBuf>,
    pub h: f64,
    pub interval: (f64, f64),
    pub samples_per_segment: usize,
    pub format: FixedPointFormat,
    pub extension_rule: ExtensionRule,
    pub function: Option<TestFunction>,
    pub probes: usize,
    pub svg_path: Option<PathBuf>,
}

/// On-disk mirror of the overridable [`RunConfig`] fields.
#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    h: Option<f64>,
    interval: Option<String>,
    samples_per_segment: Option<usize>,
    format: Option<String>,
    extension_rule: Option<String>,
    function: Option<String>,
    input_path: Option<PathBuf>,
    output_path: Option<PathBuf>,
    probes: Option<usize>,
}

/// Merges flags over the config file over defaults and checks the
/// cross-field rules for `command`.
pub fn resolve(command: Command, args: &CommonArgs) -> Result<RunConfig, AppError> {
    let file = match &args.config {
        Some(path) => load_config_file(path)?,
        None => ConfigFile::default(),
    };

    let h = args.h.or(file.h).unwrap_or(DEFAULT_H);
    let interval = match args.interval.clone().or(file.interval) {
        Some(text) => parse_interval(&text)?,
        None if command == Command::Basis => DEFAULT_BASIS_INTERVAL,
        None => DEFAULT_INTERVAL,
    };
    let samples_per_segment = args
        .k
        .or(file.samples_per_segment)
        .unwrap_or(DEFAULT_SAMPLES_PER_SEGMENT);
    let format = match args.format.clone().or(file.format) {
        Some(text) => FixedPointFormat::from_str(&text).map_err(AppError::Core)?,
        None => FixedPointFormat::q16_14(),
    };
    let extension_rule = match args.extension.clone().or(file.extension_rule) {
        Some(text) => ExtensionRule::from_str(&text).map_err(AppError::Core)?,
        None => ExtensionRule::default(),
    };
    let function = match args.function.clone().or(file.function) {
        Some(text) => Some(TestFunction::from_str(&text).map_err(AppError::Core)?),
        None => None,
    };

    let config = RunConfig {
        command,
        input_path: args.input.clone().or(file.input_path),
        output_path: args.output.clone().or(file.output_path),
        h,
        interval,
        samples_per_segment,
        format,
        extension_rule,
        function,
        probes: args.probes.or(file.probes).unwrap_or(DEFAULT_PROBES),
        svg_path: args.svg.clone(),
    };
    check_sources(&config)?;
    Ok(config)
}

fn load_config_file(path: &Path) -> Result<ConfigFile, AppError> {
    let text = fs::read_to_string(path).map_err(|source| AppError::io(path, source))?;
    serde_json::from_str(&text).map_err(|err| AppError::Config {
        path: path.to_path_buf(),
        message: err.to_string(),
    })
}

fn parse_interval(text: &str) -> Result<(f64, f64), AppError> {
    let (a, b) = text.split_once(':').ok_or_else(|| {
        AppError::Core(SplineError::Domain(format!(
            "interval `{text}` is not of the form a:b"
        )))
    })?;
    let a = parse_real(a)?;
    let b = parse_real(b)?;
    if a < b {
        Ok((a, b))
    } else {
        Err(AppError::Core(SplineError::Domain(format!(
            "interval [{a}, {b}] is empty"
        ))))
    }
}

fn parse_real(text: &str) -> Result<f64, AppError> {
    let trimmed = text.trim();
    let value: f64 = trimmed.parse().map_err(|_| {
        AppError::Core(SplineError::Domain(format!(
            "interval bound `{trimmed}` is not a number"
        )))
    })?;
    if value.is_finite() {
        Ok(value)
    } else {
        Err(AppError::Core(SplineError::Domain(format!(
            "interval bound `{trimmed}` is not finite"
        ))))
    }
}

/// Signal-consuming commands need exactly one source; comparison sweeps
/// re-sample the signal at several spacings, so they need a function.
fn check_sources(config: &RunConfig) -> Result<(), AppError> {
    let domain = |message: &str| AppError::Core(SplineError::Domain(message.into()));
    match config.command {
        Command::Approx | Command::Simulate => {
            match (config.input_path.is_some(), config.function.is_some()) {
                (true, false) | (false, true) => Ok(()),
                (true, true) => Err(domain(
                    "both an input file and a built-in function are set; choose one",
                )),
                (false, false) => Err(domain(
                    "no signal source; set an input file or a built-in function",
                )),
            }
        }
        Command::Compare => {
            if config.input_path.is_some() {
                Err(domain(
                    "comparison needs a signal it can re-sample at several spacings; use a built-in function instead of a file",
                ))
            } else if config.function.is_none() {
                Err(domain("no function selected; set one of ln1p, sin, exp"))
            } else {
                Ok(())
            }
        }
        Command::Basis | Command::Rom => Ok(()),
    }
}
