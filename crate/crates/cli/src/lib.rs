//! Library behind the `frac-hawkes` binary: configuration, commands and the
//! `validate` self-test.

// `!(x > 0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod checks;
pub mod config;
pub mod error;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::Parser;

use frac_hawkes::analysis::{bartlett_spectrum, expected_count, expected_count_curve, mean_intensity};
use frac_hawkes::grid::CurveMeta;
use frac_hawkes::io::{self, Format};
use frac_hawkes::process::{
    intensity_path, replicate_counts, simulate, CountSummary, EventSequence,
};
use serde::{Deserialize, Serialize};

pub use config::{Cli, Command, GridSpec, RunConfig, Spacing, Tolerances};
pub use error::CliError;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Record of a run: the resolved configuration plus what it produced.
/// Reading it back with `--config` reproduces the artifacts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    #[serde(flatten)]
    pub config: RunConfig,
    pub artifact_files: Vec<PathBuf>,
    pub tool_version: String,
}

/// Result of `simulate` with more than one replication.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplicationSummary {
    pub horizon: f64,
    pub seed: u64,
    #[serde(flatten)]
    pub counts: CountSummary,
    /// `E N(T)` from the mean-intensity transform.
    pub expected_count: f64,
    /// `(mean - expected_count) / standard_error`.
    pub z_score: f64,
}

/// Entry point of the binary: parses `args` (program name first), runs, and
/// returns the process exit code.
pub fn execute<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match cli.resolve().and_then(|cfg| run(&cfg)) {
        Ok(Some(manifest)) => {
            for f in &manifest.artifact_files {
                println!("wrote {}", f.display());
            }
            println!("wrote {}", manifest_path(&manifest.config.out_path()).display());
            0
        }
        Ok(None) => 0,
        Err(e) => {
            eprintln!("frac-hawkes: {e}");
            e.exit_code()
        }
    }
}

/// Runs a resolved configuration, writes its artifacts and manifest, and
/// returns the manifest. `validate` writes nothing and returns `None`.
pub fn run(cfg: &RunConfig) -> Result<Option<Manifest>, CliError> {
    cfg.validate()?;
    let out = cfg.out_path();
    let artifacts = match cfg.command() {
        Command::Validate => {
            let report = checks::run_checks(checks::default_gamma, cfg.deep);
            print!("{}", checks::render(&report));
            checks::verdict(&report)?;
            return Ok(None);
        }
        Command::Simulate => run_simulate(cfg, &out)?,
        Command::IntensityPath => run_intensity_path(cfg, &out)?,
        Command::MeanIntensity => {
            let curve = mean_intensity(&cfg.params, &cfg.grid().values()?, &cfg.tolerances.inversion())?;
            io::save_curve(&curve, &out, cfg.format)?
        }
        Command::ExpectedCount => {
            let curve =
                expected_count_curve(&cfg.params, &cfg.grid().values()?, &cfg.tolerances.inversion())?;
            io::save_curve(&curve, &out, cfg.format)?
        }
        Command::Spectrum => {
            let curve = bartlett_spectrum(&cfg.params, &cfg.grid().values()?)?;
            io::save_curve(&curve, &out, cfg.format)?
        }
    };
    let manifest = Manifest {
        config: cfg.clone(),
        artifact_files: artifacts,
        tool_version: TOOL_VERSION.to_string(),
    };
    write_json(&manifest_path(&out), &manifest)?;
    Ok(Some(manifest))
}

/// `fig.csv` -> `fig.manifest.json`.
pub fn manifest_path(out: &Path) -> PathBuf {
    out.with_extension("manifest.json")
}

fn write_json<V: Serialize>(path: &Path, value: &V) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    let mut f = std::fs::File::create(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    f.write_all(text.as_bytes())
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok(())
}

fn run_simulate(cfg: &RunConfig, out: &Path) -> Result<Vec<PathBuf>, CliError> {
    let thinning = cfg.tolerances.thinning();
    if cfg.replications == 1 {
        let seq = simulate(&cfg.params, cfg.horizon, &thinning, cfg.seed)?;
        return Ok(io::save_sequence(&seq, out, cfg.format)?);
    }
    let counts = replicate_counts(&cfg.params, cfg.horizon, &thinning, cfg.seed, cfg.replications)?;
    let stats = CountSummary::from_counts(&counts);
    let want = expected_count(&cfg.params, cfg.horizon, &cfg.tolerances.inversion())?;
    let summary = ReplicationSummary {
        horizon: cfg.horizon,
        seed: cfg.seed,
        counts: stats,
        expected_count: want,
        z_score: (stats.mean - want) / stats.standard_error,
    };
    println!("{}", serde_json::to_string_pretty(&summary)?);
    match cfg.format {
        Format::Json => {
            write_json(out, &summary)?;
            Ok(vec![out.to_path_buf()])
        }
        Format::Csv => {
            // One count per replication; the summary goes to the sidecar.
            let mut text = String::from("replication,count\n");
            for (i, c) in counts.iter().enumerate() {
                text.push_str(&format!("{i},{c}\n"));
            }
            std::fs::write(out, text).map_err(|e| CliError::Io(format!("{}: {e}", out.display())))?;
            let side = io::sidecar_path(out);
            write_json(&side, &summary)?;
            Ok(vec![out.to_path_buf(), side])
        }
    }
}

fn run_intensity_path(cfg: &RunConfig, out: &Path) -> Result<Vec<PathBuf>, CliError> {
    let seq = match &cfg.events {
        Some(path) => load_events(cfg, path)?,
        None => simulate(&cfg.params, cfg.horizon, &cfg.tolerances.thinning(), cfg.seed)?,
    };
    let path = intensity_path(&seq, &cfg.grid().values()?, cfg.tolerances.epsilon)?;
    let mut curve = path.to_curve()?;
    curve.meta = with_events(curve.meta, &seq);
    Ok(io::save_curve(&curve, out, cfg.format)?)
}

/// Event files ending in `.json` carry their own parameters; a CSV of epochs
/// takes them from the run configuration.
fn load_events(cfg: &RunConfig, path: &Path) -> Result<EventSequence<f64>, CliError> {
    let format = match path.extension().and_then(|e| e.to_str()) {
        Some("json") => Format::Json,
        _ => Format::Csv,
    };
    let template = EventSequence {
        params: cfg.params,
        horizon: cfg.horizon,
        seed: cfg.seed,
        stream: 0,
        epochs: Vec::new(),
    };
    let seq = io::load_sequence(path, format, Some(&template))?;
    if seq.epochs.last().is_some_and(|&e| e > cfg.horizon) {
        return Err(CliError::Config(format!(
            "events extend past the horizon T = {}",
            cfg.horizon
        )));
    }
    Ok(seq)
}

fn with_events(meta: CurveMeta, seq: &EventSequence<f64>) -> CurveMeta {
    meta.with("event_count", seq.len())
}
