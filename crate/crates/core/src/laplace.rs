//! Numerical inversion of Laplace transforms.
//!
//! The fixed Talbot method (Abate & Valkó) integrates the Bromwich integral
//! along the contour `s(θ) = rθ(cot θ + i)`, `r = 2M / (5t)`, which wraps
//! around the negative real axis. Transforms with a branch cut there (such
//! as powers `s^β` on the principal branch) stay single-valued along it.
//!
//! Gaver-Stehfest only samples the transform on the positive real axis. It
//! is ill-conditioned in double precision and is kept as an algorithmically
//! independent cross-check.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InversionMethod {
    FixedTalbot,
    GaverStehfest,
}

impl InversionMethod {
    pub fn name(self) -> &'static str {
        match self {
            InversionMethod::FixedTalbot => "fixed-talbot",
            InversionMethod::GaverStehfest => "gaver-stehfest",
        }
    }

    /// Admissible node counts.
    pub fn node_range(self) -> (usize, usize) {
        match self {
            // Round-off grows like e^{0.4 M}; beyond ~96 nodes it swamps f64.
            InversionMethod::FixedTalbot => (8, 96),
            InversionMethod::GaverStehfest => (8, 20),
        }
    }
}

impl std::str::FromStr for InversionMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fixed-talbot" | "talbot" => Ok(InversionMethod::FixedTalbot),
            "gaver-stehfest" | "stehfest" => Ok(InversionMethod::GaverStehfest),
            other => Err(Error::Domain(format!("unknown inversion method `{other}`"))),
        }
    }
}

/// Inversion algorithm, node count and acceptance tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LaplaceInversionConfig<T> {
    pub method: InversionMethod,
    pub node_count: usize,
    /// Largest accepted relative error estimate.
    pub target_tol: T,
}

impl<T: Real> Default for LaplaceInversionConfig<T> {
    fn default() -> Self {
        Self {
            method: InversionMethod::FixedTalbot,
            node_count: 32,
            target_tol: T::lit(1e-8),
        }
    }
}

impl<T: Real> LaplaceInversionConfig<T> {
    pub fn stehfest(node_count: usize) -> Self {
        Self {
            method: InversionMethod::GaverStehfest,
            node_count,
            target_tol: T::lit(1e-4),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.method.node_range();
        if self.node_count < lo || self.node_count > hi {
            return Err(Error::Domain(format!(
                "{} needs node_count in [{lo}, {hi}], got {}",
                self.method.name(),
                self.node_count
            )));
        }
        if self.method == InversionMethod::GaverStehfest && self.node_count % 2 == 1 {
            return Err(Error::Domain("Gaver-Stehfest needs an even node_count".into()));
        }
        if !(self.target_tol >= T::lit(1e-12)) || !self.target_tol.is_finite() {
            return Err(Error::Domain(format!(
                "target_tol must be finite and >= 1e-12, got {}",
                self.target_tol
            )));
        }
        Ok(())
    }

    /// Node count of the coarser companion run used for the error estimate.
    fn companion_nodes(&self) -> usize {
        match self.method {
            InversionMethod::FixedTalbot => 3 * self.node_count / 4,
            InversionMethod::GaverStehfest => self.node_count - 2,
        }
    }
}

/// Inverted value with the estimate it was accepted on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inversion<T> {
    pub value: T,
    pub error_estimate: T,
}

/// Inverts `transform` at time `t > 0`.
///
/// The error estimate is the difference to a coarser companion run; an
/// [`Error::InversionAccuracy`] is returned when it exceeds `target_tol`
/// times `max(|f(t)|, |F(1/t)| / t)`. The second term is the natural size
/// of the original near `t`, which bounds the round-off of both rules, so
/// values far below it are judged in absolute terms.
pub fn invert<T, F>(transform: F, t: T, cfg: &LaplaceInversionConfig<T>) -> Result<Inversion<T>>
where
    T: Real,
    F: Fn(Complex<T>) -> Complex<T>,
{
    cfg.validate()?;
    if !(t > T::zero()) || !t.is_finite() {
        return Err(Error::Domain(format!("inversion time must be positive, got {t}")));
    }
    let run = |nodes: usize| match cfg.method {
        InversionMethod::FixedTalbot => fixed_talbot(&transform, t, nodes),
        InversionMethod::GaverStehfest => gaver_stehfest(&transform, t, nodes),
    };
    let value = run(cfg.node_count);
    let coarse = run(cfg.companion_nodes());
    let error_estimate = (value - coarse).abs();
    let inv_t = t.recip();
    let scale = value
        .abs()
        .max(transform(Complex::new(inv_t, T::zero())).re.abs() * inv_t);
    if !value.is_finite() || !(error_estimate <= cfg.target_tol * scale) {
        return Err(Error::InversionAccuracy {
            time: t.as_f64(),
            value: value.as_f64(),
            error_estimate: error_estimate.as_f64(),
            target: (cfg.target_tol * scale).as_f64(),
        });
    }
    Ok(Inversion {
        value,
        error_estimate,
    })
}

/// Fixed Talbot rule with `nodes` contour points.
pub fn fixed_talbot<T, F>(transform: &F, t: T, nodes: usize) -> T
where
    T: Real,
    F: Fn(Complex<T>) -> Complex<T>,
{
    let m = T::from_usize_lossy(nodes);
    let r = T::lit(0.4) * m / t;
    let mut sum = T::lit(0.5) * transform(Complex::new(r, T::zero())).re * (r * t).exp();
    for k in 1..nodes {
        let theta = T::from_usize_lossy(k) * T::PI() / m;
        let cot = theta.cos() / theta.sin();
        let s = Complex::new(r * theta * cot, r * theta);
        let sigma = theta + (theta * cot - T::one()) * cot;
        let term = (s * t).exp() * transform(s) * Complex::new(T::one(), sigma);
        sum = sum + term.re;
    }
    r / m * sum
}

/// Gaver-Stehfest rule with an even number of terms.
pub fn gaver_stehfest<T, F>(transform: &F, t: T, terms: usize) -> T
where
    T: Real,
    F: Fn(Complex<T>) -> Complex<T>,
{
    let ln2_t = T::LN_2() / t;
    stehfest_weights(terms)
        .into_iter()
        .enumerate()
        .map(|(i, w)| {
            let s = ln2_t * T::from_usize_lossy(i + 1);
            T::lit(w) * transform(Complex::new(s, T::zero())).re
        })
        .fold(T::zero(), |a, b| a + b)
        * ln2_t
}

fn stehfest_weights(n: usize) -> Vec<f64> {
    let half = n / 2;
    let fact = |k: usize| -> f64 { (1..=k).map(|i| i as f64).product() };
    (1..=n)
        .map(|k| {
            let lo = (k + 1) / 2;
            let hi = k.min(half);
            let s: f64 = (lo..=hi)
                .map(|j| {
                    (j as f64).powi(half as i32) * fact(2 * j)
                        / (fact(half - j) * fact(j) * fact(j - 1) * fact(k - j) * fact(2 * j - k))
                })
                .sum();
            if (k + half) % 2 == 0 {
                s
            } else {
                -s
            }
        })
        .collect()
}
