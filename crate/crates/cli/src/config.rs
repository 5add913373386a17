//! Run configuration: defaults, JSON config file and command-line flags,
//! merged in that order.

use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use frac_hawkes::io::Format;
use frac_hawkes::laplace::{InversionMethod, LaplaceInversionConfig};
use frac_hawkes::process::{KernelMode, ModelParams, ThinningConfig};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Simulate,
    IntensityPath,
    MeanIntensity,
    ExpectedCount,
    Spectrum,
    Validate,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Simulate => "simulate",
            Command::IntensityPath => "intensity-path",
            Command::MeanIntensity => "mean-intensity",
            Command::ExpectedCount => "expected-count",
            Command::Spectrum => "spectrum",
            Command::Validate => "validate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

/// Abscissa grid: times, or frequencies for `spectrum`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub start: f64,
    pub end: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl GridSpec {
    pub fn values(&self) -> Result<Vec<f64>, CliError> {
        let v = match self.spacing {
            Spacing::Linear => frac_hawkes::grid::linspace(self.start, self.end, self.points),
            Spacing::Log => frac_hawkes::grid::logspace(self.start, self.end, self.points),
        };
        v.map_err(|e| CliError::Config(format!("grid: {e}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    pub method: InversionMethod,
    pub node_count: usize,
    pub target_tol: f64,
    pub epsilon: f64,
    pub max_events: usize,
    pub kernel: KernelMode,
}

impl Default for Tolerances {
    fn default() -> Self {
        let inv = LaplaceInversionConfig::<f64>::default();
        let thin = ThinningConfig::<f64>::default();
        Self {
            method: inv.method,
            node_count: inv.node_count,
            target_tol: inv.target_tol,
            epsilon: thin.epsilon,
            max_events: thin.max_events,
            kernel: thin.kernel,
        }
    }
}

impl Tolerances {
    pub fn inversion(&self) -> LaplaceInversionConfig<f64> {
        LaplaceInversionConfig {
            method: self.method,
            node_count: self.node_count,
            target_tol: self.target_tol,
        }
    }

    pub fn thinning(&self) -> ThinningConfig<f64> {
        ThinningConfig {
            epsilon: self.epsilon,
            max_events: self.max_events,
            kernel: self.kernel,
            ..ThinningConfig::default()
        }
    }
}

/// Everything a run depends on. A manifest is a `RunConfig` plus the list
/// of files written, so it can be fed back through `--config`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub command: Option<Command>,
    pub params: ModelParams<f64>,
    pub horizon: f64,
    pub grid: Option<GridSpec>,
    pub seed: u64,
    pub replications: usize,
    pub format: Format,
    pub out: Option<PathBuf>,
    /// Event sequence (JSON) for `intensity-path`; simulated when absent.
    pub events: Option<PathBuf>,
    pub deep: bool,
    pub tolerances: Tolerances,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            command: None,
            params: ModelParams {
                lambda: 1.0,
                alpha: 0.5,
                beta: 0.5,
            },
            horizon: 10.0,
            grid: None,
            seed: 0,
            replications: 1,
            format: Format::Csv,
            out: None,
            events: None,
            deep: false,
            tolerances: Tolerances::default(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "frac-hawkes",
    version,
    about = "Simulate and analyse Hawkes processes with Mittag-Leffler kernels"
)]
pub struct Cli {
    /// What to run; may instead come from the config file.
    #[arg(value_enum)]
    pub command: Option<Command>,

    /// JSON run configuration (a manifest from an earlier run also works).
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Baseline intensity.
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Branching ratio, in [0, 1).
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Kernel exponent, in (0, 1].
    #[arg(long)]
    pub beta: Option<f64>,
    /// Simulation horizon.
    #[arg(long = "T", alias = "horizon")]
    pub horizon: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub replications: Option<usize>,
    /// csv or json.
    #[arg(long, value_parser = parse_format)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Event sequence for intensity-path (JSON, or the CSV from simulate).
    #[arg(long)]
    pub events: Option<PathBuf>,

    /// First grid point (time, or frequency for spectrum).
    #[arg(long, visible_aliases = ["tmin", "wmin"])]
    pub xmin: Option<f64>,
    /// Last grid point.
    #[arg(long, visible_aliases = ["tmax", "wmax"])]
    pub xmax: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long, value_enum)]
    pub spacing: Option<Spacing>,

    /// Laplace inversion tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Laplace inversion node count.
    #[arg(long)]
    pub nodes: Option<usize>,
    /// talbot or stehfest.
    #[arg(long, value_parser = parse_method)]
    pub method: Option<InversionMethod>,
    /// Thinning look-ahead.
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long)]
    pub max_events: Option<usize>,
    /// exact or exponential-mixture.
    #[arg(long, value_parser = parse_kernel)]
    pub kernel: Option<KernelMode>,

    /// validate: include the 10,000-replication statistical checks.
    #[arg(long)]
    pub deep: bool,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: frac_hawkes::Error| e.to_string())
}

fn parse_method(s: &str) -> Result<InversionMethod, String> {
    s.parse().map_err(|e: frac_hawkes::Error| e.to_string())
}

fn parse_kernel(s: &str) -> Result<KernelMode, String> {
    match s {
        "exact" => Ok(KernelMode::Exact),
        "exponential-mixture" | "mixture" => Ok(KernelMode::ExponentialMixture),
        other => Err(format!("unknown kernel mode `{other}` (exact|exponential-mixture)")),
    }
}

/// Reads a config file; unknown keys (such as manifest extras) are ignored.
pub fn load_file(path: &Path) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

impl Cli {
    /// Defaults, then the config file, then flags.
    pub fn resolve(&self) -> Result<RunConfig, CliError> {
        let mut cfg = match &self.config {
            Some(p) => load_file(p)?,
            None => RunConfig::default(),
        };
        if self.command.is_some() {
            cfg.command = self.command;
        }
        let set = |dst: &mut f64, src: Option<f64>| {
            if let Some(v) = src {
                *dst = v;
            }
        };
        set(&mut cfg.params.lambda, self.lambda);
        set(&mut cfg.params.alpha, self.alpha);
        set(&mut cfg.params.beta, self.beta);
        set(&mut cfg.horizon, self.horizon);
        set(&mut cfg.tolerances.target_tol, self.tol);
        set(&mut cfg.tolerances.epsilon, self.epsilon);
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = self.replications {
            cfg.replications = v;
        }
        if let Some(v) = self.format {
            cfg.format = v;
        }
        if let Some(v) = &self.out {
            cfg.out = Some(v.clone());
        }
        if let Some(v) = &self.events {
            cfg.events = Some(v.clone());
        }
        if let Some(v) = self.nodes {
            cfg.tolerances.node_count = v;
        }
        if let Some(v) = self.method {
            cfg.tolerances.method = v;
        }
        if let Some(v) = self.max_events {
            cfg.tolerances.max_events = v;
        }
        if let Some(v) = self.kernel {
            cfg.tolerances.kernel = v;
        }
        cfg.deep |= self.deep;

        let command = cfg
            .command
            .ok_or_else(|| CliError::Config("no command given (flag or config file)".into()))?;
        let mut g = cfg.grid.unwrap_or_else(|| default_grid(command, cfg.horizon));
        if let Some(v) = self.xmax {
            g.end = v;
        }
        if let Some(v) = self.points {
            g.points = v;
        }
        if let Some(v) = self.spacing {
            g.spacing = v;
        }
        g.start = match (self.xmin, cfg.grid) {
            (Some(v), _) => v,
            (None, Some(file)) => file.start,
            (None, None) => default_start(command, &g),
        };
        cfg.grid = Some(g);
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Grid used when neither file nor flags give one; `start` is filled in by
/// [`default_start`] once `end` and `points` are final.
fn default_grid(command: Command, horizon: f64) -> GridSpec {
    let (end, points) = match command {
        Command::Spectrum => (50.0, 1001),
        Command::IntensityPath | Command::Simulate => (horizon, 1001),
        Command::MeanIntensity | Command::ExpectedCount | Command::Validate => (20.0, 200),
    };
    GridSpec {
        start: 0.0,
        end,
        points,
        spacing: Spacing::Linear,
    }
}

fn default_start(command: Command, g: &GridSpec) -> f64 {
    match command {
        Command::Spectrum => -g.end,
        Command::IntensityPath | Command::Simulate => 0.0,
        // Time curves start one step after zero, so `t = k·end/points`.
        _ => g.end / g.points as f64,
    }
}

impl RunConfig {
    pub fn command(&self) -> Command {
        self.command.expect("resolved config has a command")
    }

    pub fn grid(&self) -> GridSpec {
        self.grid.expect("resolved config has a grid")
    }

    /// Checks every invariant the run relies on, naming the one violated.
    pub fn validate(&self) -> Result<(), CliError> {
        let command = self
            .command
            .ok_or_else(|| CliError::Config("no command given".into()))?;
        self.params
            .validate()
            .map_err(|e| CliError::Config(e.to_string()))?;
        if !(self.horizon > 0.0) || !self.horizon.is_finite() {
            return Err(CliError::Config(format!(
                "horizon T must be positive and finite, got {}",
                self.horizon
            )));
        }
        if self.replications == 0 {
            return Err(CliError::Config("replications must be at least 1".into()));
        }
        self.tolerances
            .inversion()
            .validate()
            .map_err(|e| CliError::Config(e.to_string()))?;
        self.tolerances
            .thinning()
            .validate()
            .map_err(|e| CliError::Config(e.to_string()))?;
        if let Some(g) = self.grid {
            let xs = g.values()?;
            match command {
                Command::MeanIntensity if xs[0] <= 0.0 => {
                    return Err(CliError::Config("mean-intensity grid must be > 0".into()))
                }
                Command::ExpectedCount if xs[0] < 0.0 => {
                    return Err(CliError::Config("expected-count grid must be >= 0".into()))
                }
                Command::IntensityPath if xs[0] < 0.0 || g.end > self.horizon => {
                    return Err(CliError::Config(format!(
                        "intensity-path grid must lie in [0, T = {}]",
                        self.horizon
                    )))
                }
                _ => {}
            }
        }
        if let Some(out) = &self.out {
            let parent = out.parent().filter(|p| !p.as_os_str().is_empty());
            if let Some(dir) = parent {
                if !dir.is_dir() {
                    return Err(CliError::Config(format!(
                        "output directory {} does not exist",
                        dir.display()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn out_path(&self) -> PathBuf {
        self.out.clone().unwrap_or_else(|| {
            PathBuf::from(format!("{}.{}", self.command().name(), self.format.extension()))
        })
    }
}
