//! Self-test run by `frac-hawkes validate`.
//!
//! Reference values come from sources independent of the library: `statrs`
//! for Γ and erfc, closed forms, and a direct power series.

use std::fmt::Write;

use frac_hawkes::analysis::{expected_count, mean_intensity_at, spectral_density};
use frac_hawkes::laplace::LaplaceInversionConfig;
use frac_hawkes::mlf::{
    mlf_one_param, mlf_pdf, mlf_survival_via_mixture, mlf_two_param, MlfArg, TwoParamIndex,
};
use frac_hawkes::process::{
    replicate_counts, simulate_exponential_cluster, CountSummary, ModelParams, ThinningConfig,
};
use frac_hawkes::quadrature::{integrate, QuadConfig};
use frac_hawkes::stats::ks_two_sample;
use statrs::function::erf::erfc;

use crate::error::CliError;

/// Γ used by the series reference; swappable so a broken Γ can be injected.
pub type GammaFn = fn(f64) -> f64;

pub fn default_gamma(x: f64) -> f64 {
    statrs::function::gamma::gamma(x)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    /// Worst observed deviation, or the statistic tested; NaN if an
    /// evaluation failed outright.
    pub observed: f64,
    pub threshold: f64,
}

type Eval = frac_hawkes::Result<f64>;

/// Passes when `observed <= threshold`; an error fails the check.
fn at_most(name: &'static str, threshold: f64, observed: Eval) -> CheckResult {
    let observed = observed.unwrap_or(f64::NAN);
    CheckResult {
        name,
        passed: observed <= threshold,
        observed,
        threshold,
    }
}

/// Passes when `observed > threshold`.
fn above(name: &'static str, threshold: f64, observed: Eval) -> CheckResult {
    let observed = observed.unwrap_or(f64::NAN);
    CheckResult {
        name,
        passed: observed > threshold,
        observed,
        threshold,
    }
}

/// Largest deviation over a set of points.
fn max_dev(points: impl IntoIterator<Item = Eval>) -> Eval {
    points.into_iter().try_fold(0.0f64, |m, d| {
        let d = d?;
        Ok(if d.is_nan() { f64::INFINITY } else { m.max(d) })
    })
}

fn survival(t: f64, beta: f64) -> Eval {
    mlf_one_param(&MlfArg::new(t, beta)?)
}

fn pdf(t: f64, beta: f64) -> Eval {
    mlf_pdf(&MlfArg::new(t, beta)?)
}

fn params(lambda: f64, alpha: f64, beta: f64) -> ModelParams<f64> {
    ModelParams { lambda, alpha, beta }
}

fn log_grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(move |i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
}

pub fn run_checks(gamma: GammaFn, deep: bool) -> Vec<CheckResult> {
    let mut out = vec![
        ml_series(gamma),
        half_order_survival(),
        exponential_degeneration(),
        density_normalisation(),
        mixture_identity(),
        half_order_mean_intensity(),
        exponential_mean_intensity(),
        spectrum_at_zero(),
    ];
    if deep {
        out.extend([poisson_dispersion(), mean_count(), cluster_ks()]);
    }
    out
}

/// `E_{γ,δ}(z)` against 64 terms of its power series for `-1 ≤ z ≤ 0`.
fn ml_series(gamma: GammaFn) -> CheckResult {
    let cases = [(0.3, 1.0), (0.5, 0.5), (0.7, 0.7), (0.9, 1.0), (0.6, 1.4)];
    let devs = cases.iter().flat_map(|&(g, d)| {
        (0..=10).map(move |i| {
            let z = -(i as f64) / 10.0;
            let direct: f64 = (0..64).map(|n| z.powi(n) / gamma(g * n as f64 + d)).sum();
            Ok((mlf_two_param(z, &TwoParamIndex::new(g, d)?)? - direct).abs())
        })
    });
    at_most("ml-series", 1e-12, max_dev(devs))
}

/// `E_{1/2}(-√t) = e^t erfc(√t)` on [0, 50].
fn half_order_survival() -> CheckResult {
    let devs = (0..=500).map(|i| {
        let t = i as f64 * 0.1;
        Ok((survival(t, 0.5)? - t.exp() * erfc(t.sqrt())).abs())
    });
    at_most("ml-half-order-erfc", 1e-8, max_dev(devs))
}

/// Survival function and density both reduce to `e^{-t}` at β = 1.
fn exponential_degeneration() -> CheckResult {
    let devs = (0..=500).map(|i| {
        let t = i as f64 * 0.1;
        let e = (-t).exp();
        Ok((survival(t, 1.0)? - e).abs().max((pdf(t, 1.0)? - e).abs()))
    });
    at_most("ml-exponential-degeneration", 1e-12, max_dev(devs))
}

/// `∫ f_β = 1`: quadrature on [0, 10^8] plus the asymptotic tail.
fn density_normalisation() -> CheckResult {
    let cfg = QuadConfig::with_rel_tol(1e-11);
    let devs = [0.3, 0.5, 0.7, 0.9].into_iter().map(|beta: f64| {
        // t = w^(1/β) on [0, 1] removes the t^(β-1) singularity.
        let head = integrate(
            |w: f64| {
                if w == 0.0 {
                    return 1.0 / (beta * default_gamma(beta));
                }
                let t = w.powf(1.0 / beta);
                pdf(t, beta).unwrap_or(f64::NAN) * t / (beta * w)
            },
            0.0,
            1.0,
            &cfg,
        )?
        .value;
        let upper: f64 = 1e8;
        let body = integrate(
            |v: f64| {
                let t = v.exp();
                pdf(t, beta).unwrap_or(f64::NAN) * t
            },
            0.0,
            upper.ln(),
            &cfg,
        )?
        .value;
        let x = upper.powf(beta);
        let tail: f64 = (1..6)
            .map(|k| {
                let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                sign * x.powi(-k) / default_gamma(1.0 - beta * k as f64)
            })
            .sum();
        Ok((head + body + tail - 1.0).abs())
    });
    at_most("pdf-normalisation", 1e-6, max_dev(devs))
}

/// Survival function against its exponential-mixture integral.
fn mixture_identity() -> CheckResult {
    let cfg = QuadConfig::default();
    let devs = [0.3, 0.5, 0.7, 0.9].into_iter().flat_map(|beta| {
        log_grid(1e-3, 1e3, 13).map(move |t| {
            let mixed = mlf_survival_via_mixture(&MlfArg::new(t, beta)?, &cfg)?;
            Ok((mixed - survival(t, beta)?).abs())
        })
    });
    at_most("ml-mixture-identity", 1e-8, max_dev(devs))
}

/// `Λ(t) = 2 - e^{t/4} erfc(√t/2)` for λ = 1, α = β = 1/2.
fn half_order_mean_intensity() -> CheckResult {
    let p = params(1.0, 0.5, 0.5);
    let inv = LaplaceInversionConfig::default();
    let devs = log_grid(0.01, 100.0, 50).map(|t| {
        let want = 2.0 - (t / 4.0).exp() * erfc(t.sqrt() / 2.0);
        Ok((mean_intensity_at(&p, t, &inv)? - want).abs())
    });
    at_most("mean-intensity-half-order", 1e-6, max_dev(devs))
}

/// β = 1 partial fractions, `λ/(1-α) (1 - α e^{-(1-α)t})`.
fn exponential_mean_intensity() -> CheckResult {
    let inv = LaplaceInversionConfig::default();
    let devs = [0.1, 0.5, 0.9].into_iter().flat_map(|alpha: f64| {
        log_grid(0.01, 100.0, 30).map(move |t| {
            let want = (1.0 - alpha * (-(1.0 - alpha) * t).exp()) / (1.0 - alpha);
            Ok((mean_intensity_at(&params(1.0, alpha, 1.0), t, &inv)? - want).abs())
        })
    });
    at_most("mean-intensity-exponential", 1e-8, max_dev(devs))
}

/// `f(0) = Λ / (2π(1-α)²)`.
fn spectrum_at_zero() -> CheckResult {
    let devs = [(0.5, 0.5), (0.9, 0.3), (0.1, 1.0)].into_iter().map(|(alpha, beta): (f64, f64)| {
        let want = 1.0 / (1.0 - alpha) / (2.0 * std::f64::consts::PI * (1.0 - alpha).powi(2));
        Ok((spectral_density(&params(1.0, alpha, beta), 0.0)? - want).abs())
    });
    at_most("spectrum-zero-frequency", 1e-12, max_dev(devs))
}

const DEEP_REPLICATIONS: usize = 10_000;

/// α = 0: `N(10)` is Poisson, so variance/mean is within 3 SE of 1.
fn poisson_dispersion() -> CheckResult {
    let z = replicate_counts(&params(1.0, 0.0, 0.5), 10.0, &ThinningConfig::default(), 1, DEEP_REPLICATIONS)
        .map(|c| {
            let s = CountSummary::from_counts(&c);
            (s.dispersion - 1.0).abs() / s.dispersion_se
        });
    at_most("sim-poisson-dispersion", 3.0, z)
}

/// Mean of `N(10)` within 3 SE of `∫_0^10 Λ` for λ = 1, α = β = 1/2.
fn mean_count() -> CheckResult {
    let p = params(1.0, 0.5, 0.5);
    let z = (|| {
        let want = integrate(
            |t: f64| 2.0 - (t / 4.0).exp() * erfc(t.sqrt() / 2.0),
            0.0,
            10.0,
            &QuadConfig::with_rel_tol(1e-12),
        )?
        .value;
        let c = replicate_counts(&p, 10.0, &ThinningConfig::default(), 2, DEEP_REPLICATIONS)?;
        let s = CountSummary::from_counts(&c);
        // The transform-side count must agree with the closed form too.
        let inverted = expected_count(&p, 10.0, &LaplaceInversionConfig::default())?;
        if (inverted - want).abs() > 1e-6 {
            return Ok(f64::INFINITY);
        }
        Ok((s.mean - want).abs() / s.standard_error)
    })();
    at_most("sim-mean-count", 3.0, z)
}

/// β = 1: thinning and the cluster construction give the same `N(5)` law.
fn cluster_ks() -> CheckResult {
    let p = params(1.0, 0.5, 1.0);
    let pv = (|| {
        let thinned: Vec<f64> = replicate_counts(&p, 5.0, &ThinningConfig::default(), 3, DEEP_REPLICATIONS)?
            .into_iter()
            .map(|c| c as f64)
            .collect();
        let cluster = (0..DEEP_REPLICATIONS as u64)
            .map(|i| simulate_exponential_cluster(&p, 5.0, 1_000_000 + i).map(|s| s.len() as f64))
            .collect::<frac_hawkes::Result<Vec<_>>>()?;
        Ok(ks_two_sample(&thinned, &cluster).p_value)
    })();
    above("sim-cluster-ks", 0.01, pv)
}

/// Pass/fail table, one row per check.
pub fn render(report: &[CheckResult]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:<30} {:<6} {:>12} {:>12}", "check", "result", "observed", "threshold");
    for r in report {
        let verdict = if r.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(
            s,
            "{:<30} {:<6} {:>12.3e} {:>12.3e}",
            r.name, verdict, r.observed, r.threshold
        );
    }
    s
}

/// `Err` naming the first failing check.
pub fn verdict(report: &[CheckResult]) -> Result<(), CliError> {
    match report.iter().find(|r| !r.passed) {
        Some(r) => Err(CliError::Numerical(format!(
            "check `{}` failed: observed {:e}, threshold {:e}",
            r.name, r.observed, r.threshold
        ))),
        None => Ok(()),
    }
}
