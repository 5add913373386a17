//! Laplace-domain analytics of the process.
//!
//! With `Φ̃(s) = α / (1 + s^β)` the Laplace transform of the excitation, the
//! expected intensity started from an empty history has transform
//!
//! ```text
//! Λ̃(s) = (λ / s) (1 + s^β) / ((1 - α) + s^β)
//! ```
//!
//! and tends to the stationary mean `λ / (1 - α)`. Second-order quantities
//! use the stationary rate `Λ = λ / (1 - α)`:
//!
//! ```text
//! f(ω)     = Λ / (2π (1 - G(ω)) (1 - G(-ω))),   G(ω) = Φ̃(iω)
//! μ̃^c(s)   = Λ / ((1 - Φ̃(s)) (1 - Φ̃(-s)))
//! ```
//!
//! All powers use the principal branch, argument in `(-π, π]`.

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::{check_increasing, CurveGrid, CurveMeta};
use crate::laplace::{invert, LaplaceInversionConfig};
use crate::process::ModelParams;
use crate::scalar::Real;

/// Denominator magnitude below which [`covariance_laplace`] reports a pole.
pub const POLE_TOLERANCE: f64 = 1e-12;

fn check_stable<T: Real>(params: &ModelParams<T>) -> Result<()> {
    if !(params.alpha < T::one()) {
        return Err(Error::Domain(format!(
            "stationary quantities need alpha < 1, got {}",
            params.alpha
        )));
    }
    params.validate()
}

/// `s^β` on the principal branch; `-0` imaginary parts count as `+0`.
fn cpow<T: Real>(s: Complex<T>, beta: T) -> Complex<T> {
    if beta == T::one() {
        return s;
    }
    let s = if s.im == T::zero() {
        Complex::new(s.re, T::zero())
    } else {
        s
    };
    if s.re == T::zero() && s.im == T::zero() {
        return Complex::new(T::zero(), T::zero());
    }
    s.powf(beta)
}

/// `Λ = λ / (1 - α)`.
pub fn stationary_mean<T: Real>(params: &ModelParams<T>) -> Result<T> {
    check_stable(params)?;
    Ok(params.lambda / (T::one() - params.alpha))
}

/// `Λ̃(s)` for `Re s > 0`.
pub fn mean_intensity_laplace<T: Real>(params: &ModelParams<T>, s: Complex<T>) -> Result<Complex<T>> {
    check_stable(params)?;
    if !(s.re > T::zero()) {
        return Err(Error::Domain(format!(
            "mean intensity transform needs Re(s) > 0, got {s}"
        )));
    }
    Ok(lambda_tilde(params, s))
}

/// `Λ̃(s)` anywhere off the branch cut; used on the inversion contour.
fn lambda_tilde<T: Real>(params: &ModelParams<T>, s: Complex<T>) -> Complex<T> {
    let sb = cpow(s, params.beta);
    let one = T::one();
    (sb + one) / ((sb + (one - params.alpha)) * s) * params.lambda
}

fn inversion_meta<T: Real>(
    meta: CurveMeta,
    params: &ModelParams<T>,
    cfg: &LaplaceInversionConfig<T>,
) -> CurveMeta {
    meta.with("params", params)
        .with("method", cfg.method)
        .with("node_count", cfg.node_count)
        .with("target_tol", cfg.target_tol.as_f64())
}

fn check_times<T: Real>(times: &[T]) -> Result<()> {
    check_increasing(times)?;
    if times.first().is_some_and(|&t| !(t > T::zero())) {
        return Err(Error::Domain("mean intensity needs times > 0".into()));
    }
    Ok(())
}

/// `Λ(t) = E λ(t | H_t)` at a single `t > 0`, by numerical inversion.
pub fn mean_intensity_at<T: Real>(
    params: &ModelParams<T>,
    t: T,
    cfg: &LaplaceInversionConfig<T>,
) -> Result<T> {
    check_stable(params)?;
    if !(t > T::zero()) {
        return Err(Error::Domain(format!("mean intensity needs t > 0, got {t}")));
    }
    Ok(invert(|s| lambda_tilde(params, s), t, cfg)?.value)
}

/// `Λ(t)` on a strictly increasing grid of positive times.
pub fn mean_intensity<T: Real>(
    params: &ModelParams<T>,
    times: &[T],
    cfg: &LaplaceInversionConfig<T>,
) -> Result<CurveGrid<T>> {
    check_stable(params)?;
    cfg.validate()?;
    check_times(times)?;
    let values = times
        .par_iter()
        .map(|&t| mean_intensity_at(params, t, cfg))
        .collect::<Result<Vec<_>>>()?;
    let meta = inversion_meta(
        CurveMeta::new("t", "time", "mean_intensity", "events per unit time"),
        params,
        cfg,
    );
    CurveGrid::new(times.to_vec(), values, meta)
}

/// `E N(t) = ∫_0^t Λ(τ) dτ`, inverting `Λ̃(s) / s` directly.
pub fn expected_count<T: Real>(
    params: &ModelParams<T>,
    t: T,
    cfg: &LaplaceInversionConfig<T>,
) -> Result<T> {
    check_stable(params)?;
    if !(t >= T::zero()) || !t.is_finite() {
        return Err(Error::Domain(format!("expected count needs t >= 0, got {t}")));
    }
    if t == T::zero() {
        return Ok(T::zero());
    }
    Ok(invert(|s| lambda_tilde(params, s) / s, t, cfg)?.value)
}

/// [`expected_count`] on a strictly increasing grid of non-negative times.
pub fn expected_count_curve<T: Real>(
    params: &ModelParams<T>,
    times: &[T],
    cfg: &LaplaceInversionConfig<T>,
) -> Result<CurveGrid<T>> {
    check_stable(params)?;
    cfg.validate()?;
    check_increasing(times)?;
    let values = times
        .par_iter()
        .map(|&t| expected_count(params, t, cfg))
        .collect::<Result<Vec<_>>>()?;
    let meta = inversion_meta(
        CurveMeta::new("t", "time", "expected_count", "events"),
        params,
        cfg,
    );
    CurveGrid::new(times.to_vec(), values, meta)
}

/// Bartlett spectrum `f(ω)` at one frequency.
pub fn spectral_density<T: Real>(params: &ModelParams<T>, omega: T) -> Result<T> {
    let rate = stationary_mean(params)?;
    let g = |w: T| {
        let iw = cpow(Complex::new(T::zero(), w), params.beta);
        Complex::new(params.alpha, T::zero()) / (iw + T::one())
    };
    let one = Complex::new(T::one(), T::zero());
    let denom = (one - g(omega)) * (one - g(-omega));
    Ok(rate / (T::lit(2.0) * T::PI() * denom.re))
}

/// Bartlett spectrum on a strictly increasing frequency grid.
pub fn bartlett_spectrum<T: Real>(params: &ModelParams<T>, omegas: &[T]) -> Result<CurveGrid<T>> {
    check_stable(params)?;
    check_increasing(omegas)?;
    let values = omegas
        .iter()
        .map(|&w| spectral_density(params, w))
        .collect::<Result<Vec<_>>>()?;
    let meta = CurveMeta::new("omega", "radians per unit time", "spectrum", "")
        .with("params", params);
    CurveGrid::new(omegas.to_vec(), values, meta)
}

/// Laplace transform of the complete covariance density, `μ̃^c(s)`.
///
/// Fails with [`Error::Pole`] when `1 + s^β - α` or `1 + (-s)^β - α` is
/// within [`POLE_TOLERANCE`] of zero, or when `Φ̃` itself is singular there.
pub fn covariance_laplace<T: Real>(params: &ModelParams<T>, s: Complex<T>) -> Result<Complex<T>> {
    let rate = stationary_mean(params)?;
    let tol = T::lit(POLE_TOLERANCE);
    let one = T::one();
    let mut value = Complex::new(rate, T::zero());
    for z in [s, -s] {
        let zb = cpow(z, params.beta);
        // 1 - Φ̃(z) = (1 + z^β - α) / (1 + z^β)
        let num = zb + (one - params.alpha);
        let den = zb + one;
        for m in [num.norm(), den.norm()] {
            if m < tol {
                return Err(Error::Pole {
                    magnitude: m.as_f64(),
                    tolerance: POLE_TOLERANCE,
                });
            }
        }
        value = value * den / num;
    }
    Ok(value)
}
