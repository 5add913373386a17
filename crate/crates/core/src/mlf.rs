//! Mittag-Leffler functions on the negative real axis.
//!
//! The one-parameter function evaluated at `-t^β` is the survival function of
//! a heavy-tailed waiting time; its negative derivative
//! `f_β(t) = t^(β-1) E_{β,β}(-t^β)` is the excitation kernel of the process.
//!
//! `E_{γ,δ}(-x)` is evaluated in three regimes:
//!
//! * power series with a rigorous tail bound, while cancellation between
//!   alternating terms stays small;
//! * the algebraic asymptotic expansion `-Σ (-x)^-k / Γ(δ - γk)` once its
//!   smallest term drops below the target;
//! * otherwise an integral over a positive half-line of the form
//!   `∫ K(χ) dχ`, with `K` built from `exp(-χ^(1/γ))` and a rational factor,
//!   integrated adaptively in `u = ln χ`. For `δ = 1` this is the
//!   exponential-mixture representation with density [`mixture_kernel`].
//!
//! Each regime checks its own error estimate and declines if it cannot meet
//! it, so the dispatcher falls through to the next one.
//!
//! For small `t` the survival function behaves like a stretched exponential
//! `exp(-t^β / Γ(1 + β))`; this is not used numerically.

use crate::error::{Error, Result};
use crate::quadrature::{integrate, integrate_with_breaks, QuadConfig};
use crate::scalar::Real;
use crate::special::{rgamma, rgamma_envelope, sin_pi};

/// Series is only attempted while `x^(1/γ)` stays below this.
const SERIES_GATE: f64 = 5.0;
const MAX_SERIES_TERMS: usize = 2000;
const MAX_ASYMPTOTIC_TERMS: usize = 400;
/// Γ is increasing (and log-convex) to the right of this point.
const GAMMA_MIN_ARG: f64 = 1.461_632_144_968_362_2;

/// Argument pair `(t, β)` for the one-parameter function and the density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlfArg<T> {
    t: T,
    beta: T,
}

impl<T: Real> MlfArg<T> {
    pub fn new(t: T, beta: T) -> Result<Self> {
        check_beta(beta)?;
        if !(t >= T::zero()) || !t.is_finite() {
            return Err(Error::Domain(format!("time must be finite and >= 0, got {t}")));
        }
        Ok(Self { t, beta })
    }

    pub fn t(&self) -> T {
        self.t
    }

    pub fn beta(&self) -> T {
        self.beta
    }
}

/// Index pair `(γ, δ)` of the two-parameter function.
///
/// Supported evaluation domain: `0 < γ ≤ 1`, `δ > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoParamIndex<T> {
    gamma: T,
    delta: T,
}

impl<T: Real> TwoParamIndex<T> {
    pub fn new(gamma: T, delta: T) -> Result<Self> {
        if !(gamma > T::zero()) || !(delta > T::zero()) || !delta.is_finite() {
            return Err(Error::Domain(format!(
                "indices must be positive, got gamma = {gamma}, delta = {delta}"
            )));
        }
        if gamma > T::one() {
            return Err(Error::Domain(format!(
                "gamma > 1 is outside the supported region, got {gamma}"
            )));
        }
        Ok(Self { gamma, delta })
    }

    pub fn gamma(&self) -> T {
        self.gamma
    }

    pub fn delta(&self) -> T {
        self.delta
    }
}

pub(crate) fn check_beta<T: Real>(beta: T) -> Result<()> {
    if beta > T::zero() && beta <= T::one() {
        Ok(())
    } else {
        Err(Error::Domain(format!("beta must lie in (0, 1], got {beta}")))
    }
}

/// `E_β(-t^β)`, the survival function of the Mittag-Leffler waiting time.
pub fn mlf_one_param<T: Real>(arg: &MlfArg<T>) -> Result<T> {
    survival(arg.t, arg.beta)
}

/// `E_{γ,δ}(z)` for `z ≤ 0`.
pub fn mlf_two_param<T: Real>(z: T, idx: &TwoParamIndex<T>) -> Result<T> {
    if !(z <= T::zero()) || !z.is_finite() {
        return Err(Error::Domain(format!(
            "only finite z <= 0 is supported, got {z}"
        )));
    }
    ml_neg(-z, idx.gamma, idx.delta)
}

/// Density `f_β(t) = t^(β-1) E_{β,β}(-t^β)`.
///
/// At `t = 0` the density diverges for `β < 1` and a [`Error::Singularity`]
/// is returned; for `β = 1` it is `e^{-t}` and `t = 0` gives 1.
pub fn mlf_pdf<T: Real>(arg: &MlfArg<T>) -> Result<T> {
    pdf(arg.t, arg.beta)
}

/// Spectral density `K_β(θ)` of the exponential mixture
/// `E_β(-t^β) = ∫ e^{-θt} K_β(θ) dθ`, defined for `0 < β < 1`.
pub fn mixture_kernel<T: Real>(theta: T, beta: T) -> Result<T> {
    if !(beta > T::zero() && beta < T::one()) {
        return Err(Error::Domain(format!(
            "mixture kernel needs beta in (0, 1); at beta = 1 it is a point mass, got {beta}"
        )));
    }
    if !(theta > T::zero()) || !theta.is_finite() {
        return Err(Error::Domain(format!("theta must be positive, got {theta}")));
    }
    Ok(mixture_kernel_scaled(theta, beta) / theta)
}

/// `θ K_β(θ)`, written so that large θ does not overflow.
#[inline]
pub(crate) fn mixture_kernel_scaled<T: Real>(theta: T, beta: T) -> T {
    let p = theta.powf(beta);
    let c = (beta * T::PI()).cos();
    sin_pi(beta) / T::PI() * p / (p * p + T::lit(2.0) * p * c + T::one())
}

/// `f_β(t)` computed as `∫ θ e^{-θt} K_β(θ) dθ` by adaptive quadrature.
///
/// Independent of the series/asymptotic machinery in [`mlf_pdf`]; intended
/// for cross-checks. Requires `t > 0`, `0 < β < 1`.
pub fn mlf_pdf_via_mixture<T: Real>(arg: &MlfArg<T>, cfg: &QuadConfig<T>) -> Result<T> {
    let (t, beta) = (arg.t, arg.beta);
    if beta >= T::one() {
        return Err(Error::Domain("mixture representation needs beta < 1".into()));
    }
    if t <= T::zero() {
        return Err(Error::Singularity { time: 0.0 });
    }
    // u = ln θ; integrand θ · θK(θ) · e^{-θt}, decaying like e^{(1+β)u} on the left.
    let scale = (-t.ln()).min(T::zero());
    let lo = scale - T::lit(42.0);
    let hi = (T::lit(60.0) / t).ln();
    let f = |u: T| {
        let theta = u.exp();
        theta * mixture_kernel_scaled(theta, beta) * (-theta * t).exp()
    };
    let q = integrate_with_breaks(f, &breaks(lo, T::zero(), hi), cfg)?;
    Ok(q.value)
}

/// `E_β(-t^β)` computed as `∫ e^{-θt} K_β(θ) dθ` by adaptive quadrature.
pub fn mlf_survival_via_mixture<T: Real>(arg: &MlfArg<T>, cfg: &QuadConfig<T>) -> Result<T> {
    let (t, beta) = (arg.t, arg.beta);
    if beta >= T::one() {
        return Err(Error::Domain("mixture representation needs beta < 1".into()));
    }
    // θK(θ) ~ θ^β at the origin and ~ θ^-β at infinity.
    let tail = T::lit(42.0) / beta;
    let (lo, hi) = if t > T::zero() {
        ((-t.ln()).min(T::zero()) - tail, (T::lit(60.0) / t).ln().min(tail))
    } else {
        (-tail, tail)
    };
    let f = |u: T| {
        let theta = u.exp();
        mixture_kernel_scaled(theta, beta) * (-theta * t).exp()
    };
    let q = integrate_with_breaks(f, &breaks(lo, T::zero(), hi), cfg)?;
    Ok(q.value)
}

fn breaks<T: Real>(lo: T, mid: T, hi: T) -> Vec<T> {
    if mid > lo && mid < hi {
        vec![lo, mid, hi]
    } else {
        vec![lo, hi]
    }
}

/// Survival function without re-validating arguments.
pub(crate) fn survival<T: Real>(t: T, beta: T) -> Result<T> {
    if beta == T::one() {
        return Ok((-t).exp());
    }
    if t == T::zero() {
        return Ok(T::one());
    }
    ml_neg(t.powf(beta), beta, T::one())
}

/// Density without re-validating arguments.
pub(crate) fn pdf<T: Real>(t: T, beta: T) -> Result<T> {
    if beta == T::one() {
        return Ok((-t).exp());
    }
    if t == T::zero() {
        return Err(Error::Singularity { time: 0.0 });
    }
    let x = t.powf(beta);
    Ok(x / t * ml_neg(x, beta, beta)?)
}

/// Accuracy each regime must certify before its value is used.
fn target<T: Real>() -> T {
    (T::epsilon() * T::lit(100.0)).max(T::lit(1e-12))
}

/// Relative tolerance handed to the adaptive integrator.
fn quad_tol<T: Real>() -> T {
    (target::<T>() * T::lit(0.1)).max(T::epsilon() * T::lit(200.0))
}

/// `E_{γ,δ}(-x)` for `x ≥ 0`, `0 < γ ≤ 1`, `δ > 0`.
pub(crate) fn ml_neg<T: Real>(x: T, gamma: T, delta: T) -> Result<T> {
    if x == T::zero() {
        return Ok(rgamma(delta));
    }
    if gamma == T::one() && delta == T::one() {
        return Ok((-x).exp());
    }
    if let Some(v) = series(x, gamma, delta) {
        return Ok(v);
    }
    if gamma == T::one() {
        return unit_gamma(x, delta);
    }
    if let Some(v) = asymptotic(x, gamma, delta) {
        return Ok(v);
    }
    if delta > T::one() {
        // E_{γ,δ}(z) = (E_{γ,δ-γ}(z) - 1/Γ(δ-γ)) / z
        let lower = delta - gamma;
        return Ok((ml_neg(x, gamma, lower)? - rgamma(lower)) / (-x));
    }
    integral(x, gamma, delta)
}

/// Power series `Σ (-x)^n / Γ(γn + δ)`.
///
/// Returns `None` when the alternating sum loses too many digits.
pub(crate) fn series<T: Real>(x: T, gamma: T, delta: T) -> Option<T> {
    if x.powf(gamma.recip()) > T::lit(SERIES_GATE) {
        return None;
    }
    let tol = T::epsilon();
    let mut sum = rgamma(delta);
    let mut abs_sum = sum.abs();
    let mut power = T::one();
    let mut prev_mag = abs_sum;
    let mut converged = false;

    for n in 1..MAX_SERIES_TERMS {
        power = power * x;
        let arg = gamma * T::from_usize_lossy(n) + delta;
        let mag = power * rgamma(arg);
        if !mag.is_finite() {
            return None;
        }
        sum = if n % 2 == 1 { sum - mag } else { sum + mag };
        abs_sum = abs_sum + mag;

        // Past the minimum of Γ the term ratios x Γ(a - γ)/Γ(a) only shrink,
        // so a geometric series bounds the remainder.
        if arg - gamma >= T::lit(GAMMA_MIN_ARG) && prev_mag > T::zero() {
            let ratio = mag / prev_mag;
            if ratio < T::one() && mag * ratio / (T::one() - ratio) <= tol * sum.abs() {
                converged = true;
                break;
            }
        }
        if mag == T::zero() {
            converged = true;
            break;
        }
        prev_mag = mag;
    }

    let cancellation = abs_sum / sum.abs();
    if converged && cancellation * T::epsilon() * T::lit(4.0) <= target::<T>() {
        Some(sum)
    } else {
        None
    }
}

/// Asymptotic expansion `-Σ_{k≥1} (-x)^{-k} / Γ(δ - γk)` for `γ < 1`.
///
/// Terms are summed until the bound on the next one falls below the target;
/// `None` if the expansion starts diverging first.
pub(crate) fn asymptotic<T: Real>(x: T, gamma: T, delta: T) -> Option<T> {
    if gamma >= T::one() {
        return None;
    }
    let tol = target::<T>() * T::lit(0.1);
    let inv_x = x.recip();
    let mut sum = T::zero();
    let mut inv_power = T::one();
    let mut prev_envelope = T::infinity();

    for k in 1..MAX_ASYMPTOTIC_TERMS {
        inv_power = inv_power * inv_x;
        let y = delta - gamma * T::from_usize_lossy(k);
        let envelope = inv_power * rgamma_envelope(y);
        if sum != T::zero() && envelope <= tol * sum.abs() {
            return Some(sum);
        }
        // Beyond the minimum of Γ(1 - y) an increasing envelope never turns back.
        if T::one() - y >= T::lit(1.5) && envelope > prev_envelope {
            return None;
        }
        prev_envelope = envelope;
        let term = inv_power * rgamma(y);
        sum = if k % 2 == 1 { sum + term } else { sum - term };
    }
    None
}

/// Integral representation for `0 < γ < 1`, `0 < δ ≤ 1`, `x > 0`:
///
/// `E_{γ,δ}(-x) = 1/(πγ) ∫ χ^((1-δ)/γ) e^{-χ^(1/γ)}
///     (χ sin π(1-δ) + x sin π(1-δ+γ)) / (χ² + 2χx cos πγ + x²) dχ`.
pub(crate) fn integral<T: Real>(x: T, gamma: T, delta: T) -> Result<T> {
    let a = (T::one() - delta) / gamma;
    let s1 = sin_pi(T::one() - delta);
    let s2 = sin_pi(T::one() - delta + gamma);
    let c2 = T::lit(2.0) * (T::PI() * gamma).cos();
    let inv_gamma = gamma.recip();

    // In u = ln χ the integrand decays like e^{(a+1)u} on the left and
    // super-exponentially once χ^(1/γ) passes 60.
    let hi = gamma * T::lit(60.0).ln();
    let lo = x.ln().min(T::zero()) - T::lit(42.0) / (a + T::one());
    let peak = x.ln();

    let f = |u: T| {
        let chi = u.exp();
        let weight = ((a + T::one()) * u - (u * inv_gamma).exp()).exp();
        weight * (chi * s1 + x * s2) / (chi * chi + c2 * chi * x + x * x)
    };
    let cfg = QuadConfig::with_rel_tol(quad_tol::<T>());
    let q = integrate_with_breaks(f, &breaks(lo, peak, hi), &cfg)?;
    Ok(q.value / (T::PI() * gamma))
}

/// `E_{1,δ}(-x)` for `δ ≠ 1`.
fn unit_gamma<T: Real>(x: T, delta: T) -> Result<T> {
    if delta == T::one() {
        return Ok((-x).exp());
    }
    if delta < T::one() {
        // E_{1,δ}(z) = 1/Γ(δ) + z E_{1,δ+1}(z)
        return Ok(rgamma(delta) - x * unit_gamma(x, delta + T::one())?);
    }
    // Beta-integral form with w = (1 - s)^(δ-1):
    // E_{1,δ}(-x) = 1/Γ(δ) ∫_0^1 exp(-x (1 - w^(1/(δ-1)))) dw
    let p = (delta - T::one()).recip();
    let f = |w: T| (-x * (T::one() - w.powf(p))).exp();
    let cfg = QuadConfig::with_rel_tol(quad_tol::<T>());
    let q = integrate(f, T::zero(), T::one(), &cfg)?;
    Ok(q.value * rgamma(delta))
}
