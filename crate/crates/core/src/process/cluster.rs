//! Exact simulation of the exponential-kernel (`β = 1`) process through its
//! branching structure: Poisson immigrants at rate `λ`, each event having a
//! Poisson(`α`) number of children at Exp(1) delays. Shares no code with the
//! thinning loop, which makes it an oracle for it.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;

use super::thinning::{exponential, open_unit};
use super::ModelParams;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Epochs on `[0, horizon]` of the process with kernel `e^{-t}`.
///
/// `params.beta` must be 1.
pub fn simulate_exponential_cluster<T: Real>(
    params: &ModelParams<T>,
    horizon: T,
    seed: u64,
) -> Result<Vec<T>> {
    params.validate()?;
    if params.beta != T::one() {
        return Err(Error::InvalidParams(
            "cluster construction is exact only for beta = 1".into(),
        ));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut pending = Vec::new();
    let mut t = T::zero();
    loop {
        t = t + exponential(&mut rng, params.lambda);
        if t > horizon {
            break;
        }
        pending.push(t);
    }
    let mut epochs = Vec::with_capacity(pending.len());
    while let Some(parent) = pending.pop() {
        epochs.push(parent);
        for _ in 0..poisson(&mut rng, params.alpha) {
            let child = parent + exponential(&mut rng, T::one());
            if child <= horizon {
                pending.push(child);
            }
        }
    }
    epochs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(epochs)
}

/// Poisson variate by sequential inversion; adequate for small means.
fn poisson<T: Real>(rng: &mut ChaCha20Rng, mean: T) -> usize {
    let u: T = open_unit(rng);
    let mut k = 0;
    let mut p = (-mean).exp();
    let mut cdf = p;
    while u > cdf && p > T::zero() {
        k += 1;
        p = p * mean / T::from_usize_lossy(k);
        cdf = cdf + p;
    }
    k
}
