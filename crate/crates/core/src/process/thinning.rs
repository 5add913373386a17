//! Ogata thinning.
//!
//! Each step takes the dominating rate `M = λ(t + ε | H)`, draws an
//! exponential waiting time with rate `M` (mean `1/M`), and accepts the
//! candidate `τ` with probability `λ(τ | H) / M`. Since the kernel decreases,
//! `M` bounds the intensity only from `t + ε` on; a candidate closer than `ε`
//! can see a ratio above one, which is clamped and counted.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use super::mixture::ExponentialMixture;
use super::{intensity_unchecked, EventSequence, KernelMode, ModelParams, ThinningConfig};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Counters collected during one run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ThinningDiagnostics {
    pub candidates: u64,
    pub accepted: u64,
    /// Candidates whose acceptance ratio exceeded one.
    pub clamped: u64,
}

/// Uniform variate in the open interval `(0, 1)` from the top 53 bits.
pub(crate) fn open_unit<T: Real>(rng: &mut ChaCha20Rng) -> T {
    let bits = rng.next_u64() >> 11;
    T::lit((bits as f64 + 0.5) * (1.0 / (1u64 << 53) as f64))
}

/// Exponential variate with the given rate, by inversion.
pub(crate) fn exponential<T: Real>(rng: &mut ChaCha20Rng, rate: T) -> T {
    -open_unit::<T>(rng).ln() / rate
}

/// Simulates one path on `[0, horizon]`, using stream 0 of `seed`.
pub fn simulate<T: Real>(
    params: &ModelParams<T>,
    horizon: T,
    cfg: &ThinningConfig<T>,
    seed: u64,
) -> Result<EventSequence<T>> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    run(params, horizon, cfg, &mut rng).map(|(epochs, _)| EventSequence {
        params: *params,
        horizon,
        seed,
        stream: 0,
        epochs,
    })
}

/// As [`simulate`], also returning the run's counters.
pub fn simulate_with_diagnostics<T: Real>(
    params: &ModelParams<T>,
    horizon: T,
    cfg: &ThinningConfig<T>,
    seed: u64,
) -> Result<(EventSequence<T>, ThinningDiagnostics)> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    run(params, horizon, cfg, &mut rng).map(|(epochs, diag)| {
        (
            EventSequence {
                params: *params,
                horizon,
                seed,
                stream: 0,
                epochs,
            },
            diag,
        )
    })
}

enum Intensity<T> {
    Exact,
    Mixture(ExponentialMixture<T>),
}

pub(crate) fn run<T: Real>(
    params: &ModelParams<T>,
    horizon: T,
    cfg: &ThinningConfig<T>,
    rng: &mut ChaCha20Rng,
) -> Result<(Vec<T>, ThinningDiagnostics)> {
    params.validate()?;
    cfg.validate()?;
    if !(horizon > T::zero()) || !horizon.is_finite() {
        return Err(Error::InvalidParams(format!(
            "horizon must be positive and finite, got {horizon}"
        )));
    }

    let mut kernel = match cfg.kernel {
        KernelMode::Exact => Intensity::Exact,
        KernelMode::ExponentialMixture => Intensity::Mixture(ExponentialMixture::new(
            params.beta,
            cfg.epsilon,
            horizon,
        )?),
    };
    let eval = |kernel: &Intensity<T>, epochs: &[T], s: T| -> Result<T> {
        match kernel {
            Intensity::Exact => intensity_unchecked(params, epochs, s),
            Intensity::Mixture(m) => Ok(params.lambda + params.alpha * m.excitation(s)),
        }
    };

    let mut epochs: Vec<T> = Vec::new();
    let mut diag = ThinningDiagnostics::default();
    let mut t = T::zero();
    while t < horizon {
        let bound = eval(&kernel, &epochs, t + cfg.epsilon)?;
        let tau = t + exponential(rng, bound);
        let u: T = open_unit(rng);
        t = tau;
        if tau > horizon {
            break;
        }
        diag.candidates += 1;
        if epochs.last().is_some_and(|&last| tau <= last) {
            // waiting time below the resolution of t; no admissible candidate
            continue;
        }
        let mut ratio = eval(&kernel, &epochs, tau)? / bound;
        if ratio > T::one() {
            diag.clamped += 1;
            ratio = T::one();
        }
        if u < ratio {
            if epochs.len() == cfg.max_events {
                return Err(Error::EventCapExceeded {
                    cap: cfg.max_events,
                    time: tau.as_f64(),
                });
            }
            epochs.push(tau);
            if let Intensity::Mixture(m) = &mut kernel {
                m.push(tau);
            }
            diag.accepted += 1;
        }
    }
    Ok((epochs, diag))
}
