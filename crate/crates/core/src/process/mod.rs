//! The fractional Hawkes process: conditional intensity, thinning simulation
//! and replication.
//!
//! The conditional intensity is
//!
//! ```text
//! λ(t | H_t) = λ + α Σ_{t_i < t} f_β(t - t_i)
//! ```
//!
//! with the Mittag-Leffler density `f_β` as excitation kernel. It is summed
//! over epochs strictly before `t`, so paths are left-continuous.

mod cluster;
mod mixture;
mod replicate;
mod thinning;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{CurveGrid, CurveMeta};
use crate::mlf;
use crate::scalar::Real;

pub use cluster::simulate_exponential_cluster;
pub use mixture::ExponentialMixture;
pub use replicate::{replicate, replicate_counts, replication_rng, CountSummary};
pub use thinning::{simulate, simulate_with_diagnostics, ThinningDiagnostics};

/// Baseline rate `λ`, branching ratio `α` and kernel exponent `β`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams<T> {
    pub lambda: T,
    pub alpha: T,
    pub beta: T,
}

impl<T: Real> ModelParams<T> {
    pub fn new(lambda: T, alpha: T, beta: T) -> Result<Self> {
        let p = Self {
            lambda,
            alpha,
            beta,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lambda > T::zero()) || !self.lambda.is_finite() {
            return Err(Error::InvalidParams(format!(
                "lambda must be positive and finite, got {}",
                self.lambda
            )));
        }
        if !(self.alpha >= T::zero() && self.alpha < T::one()) {
            return Err(Error::InvalidParams(format!(
                "alpha must lie in [0, 1) for stability, got {}",
                self.alpha
            )));
        }
        if !(self.beta > T::zero() && self.beta <= T::one()) {
            return Err(Error::InvalidParams(format!(
                "beta must lie in (0, 1], got {}",
                self.beta
            )));
        }
        Ok(())
    }
}

/// Deterministic generators a [`ThinningConfig`] can name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RngAlgorithm {
    /// ChaCha with 20 rounds, as specified by `rand_chacha::ChaCha20Rng`.
    #[default]
    ChaCha20,
}

/// How the history sum of the intensity is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KernelMode {
    /// Direct sum of `f_β` over all past epochs, `O(n)` per evaluation.
    #[default]
    Exact,
    /// Discretized exponential mixture with per-node state, `O(nodes)` per
    /// evaluation. See [`ExponentialMixture`].
    ExponentialMixture,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ThinningConfig<T> {
    /// Look-ahead used for the dominating rate `M = λ(t + ε)`.
    pub epsilon: T,
    /// Accepted events beyond this abort the run.
    pub max_events: usize,
    pub rng_algorithm: RngAlgorithm,
    pub kernel: KernelMode,
}

impl<T: Real> Default for ThinningConfig<T> {
    fn default() -> Self {
        Self {
            epsilon: T::lit(1e-10),
            max_events: 1_000_000,
            rng_algorithm: RngAlgorithm::ChaCha20,
            kernel: KernelMode::Exact,
        }
    }
}

impl<T: Real> ThinningConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > T::zero()) || !self.epsilon.is_finite() {
            return Err(Error::InvalidParams(format!(
                "epsilon must be positive, got {}",
                self.epsilon
            )));
        }
        if self.max_events == 0 {
            return Err(Error::InvalidParams("max_events must be at least 1".into()));
        }
        Ok(())
    }
}

/// Simulated epochs on `[0, horizon]` with everything needed to regenerate
/// them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EventSequence<T> {
    pub params: ModelParams<T>,
    pub horizon: T,
    pub seed: u64,
    /// Replication stream; `0` for a single run.
    #[serde(default, skip_serializing_if = "is_zero")]
    pub stream: u64,
    pub epochs: Vec<T>,
}

fn is_zero(x: &u64) -> bool {
    *x == 0
}

impl<T: Real> EventSequence<T> {
    pub fn len(&self) -> usize {
        self.epochs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.epochs.is_empty()
    }

    /// Number of epochs in `[0, t]`.
    pub fn count_until(&self, t: T) -> usize {
        self.epochs.partition_point(|&e| e <= t)
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        if !(self.horizon > T::zero()) || !self.horizon.is_finite() {
            return Err(Error::InvalidParams(format!(
                "horizon must be positive, got {}",
                self.horizon
            )));
        }
        check_history(&self.epochs)?;
        if let (Some(&first), Some(&last)) = (self.epochs.first(), self.epochs.last()) {
            if first < T::zero() || last > self.horizon {
                return Err(Error::Domain(format!(
                    "epochs must lie in [0, {}]",
                    self.horizon
                )));
            }
        }
        Ok(())
    }
}

/// Intensity sampled on a grid, tagged with the sequence it came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntensityPath<T> {
    pub params: ModelParams<T>,
    pub horizon: T,
    pub seed: u64,
    pub grid: Vec<T>,
    pub values: Vec<T>,
}

impl<T: Real> IntensityPath<T> {
    /// The path as an `x,y` curve carrying its provenance.
    pub fn to_curve(&self) -> Result<CurveGrid<T>> {
        let meta = CurveMeta::new("t", "time", "intensity", "events per unit time")
            .with("params", self.params)
            .with("horizon", self.horizon.as_f64())
            .with("seed", self.seed);
        CurveGrid::new(self.grid.clone(), self.values.clone(), meta)
    }
}

fn check_history<T: Real>(history: &[T]) -> Result<()> {
    if history.iter().any(|x| !x.is_finite()) {
        return Err(Error::Domain("epochs must be finite".into()));
    }
    if history.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::Domain("epochs must be strictly increasing".into()));
    }
    Ok(())
}

/// `λ(t | H_t)` for a strictly increasing history.
///
/// Epochs at or after `t` do not contribute. For `β < 1` the kernel is
/// singular at lag zero, so `t` equal to an epoch is an error.
pub fn conditional_intensity<T: Real>(params: &ModelParams<T>, history: &[T], t: T) -> Result<T> {
    params.validate()?;
    check_history(history)?;
    if !t.is_finite() {
        return Err(Error::Domain(format!("time must be finite, got {t}")));
    }
    if params.beta < T::one() && history.binary_search_by(|e| e.partial_cmp(&t).unwrap()).is_ok() {
        return Err(Error::Singularity { time: t.as_f64() });
    }
    intensity_unchecked(params, history, t)
}

/// History sum without validation; `history` must be increasing.
pub(crate) fn intensity_unchecked<T: Real>(
    params: &ModelParams<T>,
    history: &[T],
    t: T,
) -> Result<T> {
    if params.alpha == T::zero() {
        return Ok(params.lambda);
    }
    let past = &history[..history.partition_point(|&e| e < t)];
    let mut sum = T::zero();
    for &e in past.iter().rev() {
        sum = sum + mlf::pdf(t - e, params.beta)?;
    }
    Ok(params.lambda + params.alpha * sum)
}

/// Samples `λ(t | H_t)` of `seq` on `grid`.
///
/// Grid points that coincide with an epoch are evaluated at `g + epsilon`,
/// just after the jump.
pub fn intensity_path<T: Real>(
    seq: &EventSequence<T>,
    grid: &[T],
    epsilon: T,
) -> Result<IntensityPath<T>> {
    seq.validate()?;
    if !(epsilon > T::zero()) {
        return Err(Error::Domain(format!("epsilon must be positive, got {epsilon}")));
    }
    if grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::Domain("grid must be strictly increasing".into()));
    }
    if grid
        .iter()
        .any(|&g| !(g >= T::zero() && g <= seq.horizon))
    {
        return Err(Error::Domain(format!(
            "grid must lie in [0, {}]",
            seq.horizon
        )));
    }
    let values = grid
        .iter()
        .map(|&g| {
            let at = if seq.epochs.binary_search_by(|e| e.partial_cmp(&g).unwrap()).is_ok() {
                g + epsilon
            } else {
                g
            };
            intensity_unchecked(&seq.params, &seq.epochs, at)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntensityPath {
        params: seq.params,
        horizon: seq.horizon,
        seed: seq.seed,
        grid: grid.to_vec(),
        values,
    })
}
