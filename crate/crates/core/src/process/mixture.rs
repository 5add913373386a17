//! Exponential-mixture discretization of the Mittag-Leffler kernel.
//!
//! `f_β(t) = ∫ θ e^{-θt} K_β(θ) dθ`. In `u = ln θ` the integrand is analytic
//! in a strip of half-width `min((1-β)π/β, π/2)`, so the trapezoid rule
//! converges geometrically in the node spacing. The discretized kernel is a
//! finite sum of exponentials, whose history sum can be carried as one
//! decaying state per node.

use crate::error::{Error, Result};
use crate::mlf::mixture_kernel_scaled;
use crate::scalar::Real;

/// `f_β(t) ≈ Σ_k w_k e^{-θ_k t}` for lags in `[min_lag, max_lag]`, together
/// with the per-node history state used by the thinning loop.
#[derive(Debug, Clone)]
pub struct ExponentialMixture<T> {
    rates: Vec<T>,
    weights: Vec<T>,
    state: Vec<T>,
    reference: T,
}

impl<T: Real> ExponentialMixture<T> {
    pub fn new(beta: T, min_lag: T, max_lag: T) -> Result<Self> {
        if !(beta > T::zero() && beta <= T::one()) {
            return Err(Error::Domain(format!("beta must lie in (0, 1], got {beta}")));
        }
        if !(min_lag > T::zero() && max_lag > min_lag) || !max_lag.is_finite() {
            return Err(Error::Domain(format!(
                "need 0 < min_lag < max_lag, got [{min_lag}, {max_lag}]"
            )));
        }
        let (rates, weights) = if beta == T::one() {
            (vec![T::one()], vec![T::one()])
        } else {
            let tol = (T::epsilon() * T::lit(100.0)).max(T::lit(1e-10));
            let pole = (T::one() - beta) * T::PI() / beta;
            let width = pole.min(T::FRAC_PI_2());
            let h = (T::lit(2.0) * T::PI() * width / -tol.ln()).min(T::lit(0.25));
            let lo = (T::lit(1e-7) / max_lag).ln();
            let hi = (T::lit(50.0) / min_lag).ln();
            let n = ((hi - lo) / h).ceil().to_usize().unwrap_or(0) + 1;
            (0..n)
                .map(|k| {
                    let theta = (lo + h * T::from_usize_lossy(k)).exp();
                    (theta, h * theta * mixture_kernel_scaled(theta, beta))
                })
                .unzip()
        };
        let state = vec![T::zero(); rates.len()];
        Ok(Self {
            rates,
            weights,
            state,
            reference: T::zero(),
        })
    }

    pub fn node_count(&self) -> usize {
        self.rates.len()
    }

    /// Discretized `f_β(lag)`.
    pub fn kernel(&self, lag: T) -> T {
        self.rates
            .iter()
            .zip(&self.weights)
            .map(|(&r, &w)| w * (-r * lag).exp())
            .sum()
    }

    /// `Σ_i f_β(s - t_i)` over the pushed epochs, for `s` not before the last.
    pub fn excitation(&self, s: T) -> T {
        let dt = s - self.reference;
        self.rates
            .iter()
            .zip(&self.weights)
            .zip(&self.state)
            .map(|((&r, &w), &x)| w * x * (-r * dt).exp())
            .sum()
    }

    /// Records an epoch at or after the previous one.
    pub fn push(&mut self, epoch: T) {
        let dt = epoch - self.reference;
        for (x, &r) in self.state.iter_mut().zip(&self.rates) {
            *x = *x * (-r * dt).exp() + T::one();
        }
        self.reference = epoch;
    }
}
