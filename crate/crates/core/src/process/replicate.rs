//! Independent replications.
//!
//! Replication `i` of master seed `s` draws from ChaCha20 seeded with
//! `seed_from_u64(s)` on stream `i`. Stream 0 is the single-run generator,
//! so replication 0 equals `simulate(.., s)`. Results do not depend on the
//! number of worker threads.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::thinning::run;
use super::{EventSequence, ModelParams, ThinningConfig};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::stats;

/// Generator for replication `index` of `master_seed`.
pub fn replication_rng(master_seed: u64, index: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(master_seed);
    rng.set_stream(index);
    rng
}

fn check_count(replications: usize) -> Result<()> {
    if replications == 0 {
        return Err(Error::InvalidParams("replications must be at least 1".into()));
    }
    Ok(())
}

/// Runs `replications` independent paths in parallel.
pub fn replicate<T: Real>(
    params: &ModelParams<T>,
    horizon: T,
    cfg: &ThinningConfig<T>,
    master_seed: u64,
    replications: usize,
) -> Result<Vec<EventSequence<T>>> {
    check_count(replications)?;
    (0..replications as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = replication_rng(master_seed, i);
            run(params, horizon, cfg, &mut rng).map(|(epochs, _)| EventSequence {
                params: *params,
                horizon,
                seed: master_seed,
                stream: i,
                epochs,
            })
        })
        .collect()
}

/// Event counts `N(horizon)` of `replications` independent paths.
pub fn replicate_counts<T: Real>(
    params: &ModelParams<T>,
    horizon: T,
    cfg: &ThinningConfig<T>,
    master_seed: u64,
    replications: usize,
) -> Result<Vec<usize>> {
    check_count(replications)?;
    (0..replications as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = replication_rng(master_seed, i);
            run(params, horizon, cfg, &mut rng).map(|(epochs, _)| epochs.len())
        })
        .collect()
}

/// Moments of a sample of counts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CountSummary {
    pub replications: usize,
    pub mean: f64,
    pub variance: f64,
    /// Standard error of the mean.
    pub standard_error: f64,
    /// Variance-to-mean ratio; 1 for a Poisson count.
    pub dispersion: f64,
    /// Large-sample standard error of `dispersion` under a Poisson null,
    /// `sqrt(2 / (n - 1))`.
    pub dispersion_se: f64,
}

impl CountSummary {
    pub fn from_counts(counts: &[usize]) -> Self {
        let xs: Vec<f64> = counts.iter().map(|&c| c as f64).collect();
        let n = xs.len();
        let mean = stats::mean(&xs);
        let variance = stats::sample_variance(&xs);
        Self {
            replications: n,
            mean,
            variance,
            standard_error: (variance / n as f64).sqrt(),
            dispersion: variance / mean,
            dispersion_se: (2.0 / (n as f64 - 1.0)).sqrt(),
        }
    }
}
