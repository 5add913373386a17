use frac_hawkes::analysis::{
    bartlett_spectrum, covariance_laplace, expected_count, expected_count_curve, mean_intensity,
    mean_intensity_at, spectral_density, stationary_mean,
};
use frac_hawkes::grid::{linspace, logspace};
use frac_hawkes::laplace::LaplaceInversionConfig;
use frac_hawkes::process::{replicate, KernelMode, ModelParams, ThinningConfig};
use num_complex::Complex;
use proptest::prelude::*;
use statrs::function::erf::erfc;

fn params(l: f64, a: f64, b: f64) -> ModelParams<f64> {
    ModelParams::new(l, a, b).unwrap()
}

fn talbot() -> LaplaceInversionConfig<f64> {
    LaplaceInversionConfig::default()
}

fn half_order_closed_form(t: f64) -> f64 {
    2.0 - (t / 4.0).exp() * erfc(t.sqrt() / 2.0)
}

#[test]
fn exponential_kernel_partial_fractions() {
    let times = logspace(0.01, 100.0, 60).unwrap();
    for &alpha in &[0.1, 0.5, 0.9] {
        let p = params(1.0, alpha, 1.0);
        let curve = mean_intensity(&p, &times, &talbot()).unwrap();
        for (t, v) in curve.points() {
            let want = (1.0 - alpha * (-(1.0 - alpha) * t).exp()) / (1.0 - alpha);
            assert!((v - want).abs() < 1e-8, "alpha={alpha} t={t}: {v} vs {want}");
        }
    }
}

#[test]
fn half_order_closed_form_on_log_grid() {
    let p = params(1.0, 0.5, 0.5);
    let times = logspace(0.01, 100.0, 50).unwrap();
    let curve = mean_intensity(&p, &times, &talbot()).unwrap();
    for (t, v) in curve.points() {
        assert!((v - half_order_closed_form(t)).abs() < 1e-6, "t={t}");
    }
    let v = mean_intensity_at(&p, 1.0, &talbot()).unwrap();
    assert!((v - 1.384_309_655_807_074).abs() < 1e-9);
}

#[test]
fn long_time_value_matches_closed_form() {
    // 2 - e^{2500} erfc(50) = 1.988718..., still 0.011 below the limit.
    let p = params(1.0, 0.5, 0.5);
    let v = mean_intensity_at(&p, 1e4, &talbot()).unwrap();
    assert!((v - 1.988_718_463_734_676).abs() < 1e-8, "{v}");
}

#[test]
fn starts_at_baseline() {
    for &beta in &[0.3, 0.5, 0.9] {
        let v = mean_intensity_at(&params(1.0, 0.5, beta), 1e-9, &talbot()).unwrap();
        assert!((v - 1.0).abs() < 1e-2, "beta={beta}: {v}");
    }
}

#[test]
fn tauberian_approach_to_stationary_mean() {
    let times = logspace(10.0, 1e6, 9).unwrap();
    for &beta in &[0.3, 0.5, 0.7, 0.9] {
        let p = params(1.0, 0.5, beta);
        let limit = stationary_mean(&p).unwrap();
        let curve = mean_intensity(&p, &times, &talbot()).unwrap();
        let gaps: Vec<f64> = curve.ordinate.iter().map(|v| (v - limit).abs()).collect();
        assert!(gaps.windows(2).all(|g| g[1] < g[0]), "beta={beta}: {gaps:?}");
        assert!(gaps[8] < gaps[0] / 10.0, "beta={beta}: {gaps:?}");
        assert!(curve.ordinate.iter().all(|&v| v < limit));
    }
}

#[test]
fn fractional_kernel_converges_more_slowly() {
    let frac = params(1.0, 0.5, 0.5);
    let expo = params(1.0, 0.5, 1.0);
    for &t in &[5.0, 10.0, 50.0, 100.0, 1000.0] {
        let a = mean_intensity_at(&frac, t, &talbot()).unwrap();
        let b = mean_intensity_at(&expo, t, &talbot()).unwrap();
        assert!(a < b, "t={t}: {a} vs {b}");
    }
}

#[test]
fn stehfest_cross_check() {
    // Fractional kernels only: for β = 1 the transient is a pure exponential,
    // which Stehfest resolves poorly, and the partial-fraction oracle applies.
    let stehfest = LaplaceInversionConfig::stehfest(16);
    for &beta in &[0.3, 0.5, 0.7, 0.9] {
        let p = params(1.0, 0.5, beta);
        for &t in &[0.5, 1.0, 5.0, 20.0, 100.0] {
            let a = mean_intensity_at(&p, t, &talbot()).unwrap();
            let b = mean_intensity_at(&p, t, &stehfest).unwrap();
            assert!((a - b).abs() < 1e-5, "beta={beta} t={t}: {a} vs {b}");
        }
    }
}

#[test]
fn count_derivative_is_mean_intensity() {
    let p = params(1.0, 0.5, 0.5);
    for &t in &[0.1, 0.5, 1.0, 3.0, 10.0, 50.0] {
        let h = 1e-3 * t;
        let d = (expected_count(&p, t + h, &talbot()).unwrap()
            - expected_count(&p, t - h, &talbot()).unwrap())
            / (2.0 * h);
        let v = mean_intensity_at(&p, t, &talbot()).unwrap();
        assert!(((d - v) / v).abs() < 1e-4, "t={t}: {d} vs {v}");
    }
}

#[test]
fn count_bounds_and_monotonicity() {
    let times = linspace(0.0, 30.0, 31).unwrap();
    for &beta in &[0.3, 0.7, 1.0] {
        let p = params(1.5, 0.6, beta);
        let curve = expected_count_curve(&p, &times, &talbot()).unwrap();
        assert_eq!(curve.ordinate[0], 0.0);
        assert!(curve.ordinate.windows(2).all(|w| w[1] > w[0]));
        for (t, n) in curve.points().skip(1) {
            assert!(n >= 1.5 * t && n <= 1.5 * t / 0.4, "t={t}: {n}");
        }
    }
}

#[test]
fn exponential_count_reference() {
    let n = expected_count(&params(1.0, 0.5, 1.0), 2.0, &talbot()).unwrap();
    assert!((n - (2.0 + 2.0 * (-1.0f64).exp())).abs() < 1e-9);
}

#[test]
fn spectrum_symmetry_and_positivity() {
    let omegas: Vec<f64> = (-500..=500).map(|k| k as f64 / 10.0).collect();
    for &beta in &[0.3, 0.5, 0.9, 1.0] {
        let p = params(1.0, 0.5, beta);
        let curve = bartlett_spectrum(&p, &omegas).unwrap();
        let n = curve.len();
        for i in 0..n {
            let (f, g) = (curve.ordinate[i], curve.ordinate[n - 1 - i]);
            assert!(f > 0.0);
            assert!((f - g).abs() <= 1e-14 * f, "beta={beta} omega={}", omegas[i]);
        }
    }
}

#[test]
fn spectrum_at_zero_frequency() {
    for &(alpha, beta) in &[(0.5, 0.5), (0.9, 0.3), (0.1, 1.0)] {
        let p = params(1.0, alpha, beta);
        let want = 1.0 / (1.0 - alpha) / (2.0 * std::f64::consts::PI * (1.0 - alpha).powi(2));
        assert!((spectral_density(&p, 0.0).unwrap() - want).abs() < 1e-12);
    }
}

#[test]
fn covariance_reproduces_spectrum() {
    for &beta in &[0.3, 0.5, 0.8, 1.0] {
        let p = params(1.0, 0.5, beta);
        for &w in &[-50.0, -1.0, 0.0, 0.25, 3.0, 50.0] {
            let c = covariance_laplace(&p, Complex::new(0.0, w)).unwrap();
            let f = spectral_density(&p, w).unwrap();
            assert!((c.re - 2.0 * std::f64::consts::PI * f).abs() < 1e-10);
            assert!(c.im.abs() < 1e-10);
        }
    }
}

#[test]
fn binned_simulation_matches_mean_intensity() {
    let p = params(1.0, 0.5, 0.5);
    let cfg = ThinningConfig {
        kernel: KernelMode::ExponentialMixture,
        ..ThinningConfig::default()
    };
    let n = 10_000;
    let runs = replicate(&p, 10.0, &cfg, 31, n).unwrap();
    let edges = linspace(0.0, 10.0, 11).unwrap();
    for w in edges.windows(2) {
        let counts: Vec<f64> = runs
            .iter()
            .map(|r| (r.count_until(w[1]) - r.count_until(w[0])) as f64)
            .collect();
        let mean = frac_hawkes::stats::mean(&counts);
        let se = (frac_hawkes::stats::sample_variance(&counts) / n as f64).sqrt();
        let want = expected_count(&p, w[1], &talbot()).unwrap()
            - expected_count(&p, w[0], &talbot()).unwrap();
        assert!((mean - want).abs() < 3.0 * se, "bin {w:?}: {mean} vs {want} (se {se})");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mean_intensity_is_non_decreasing(
        alpha in 0.0f64..0.95,
        beta in 0.1f64..1.0,
        t in 0.01f64..100.0,
        ratio in 1.01f64..3.0,
    ) {
        let p = params(1.0, alpha, beta);
        let a = mean_intensity_at(&p, t, &talbot()).unwrap();
        let b = mean_intensity_at(&p, t * ratio, &talbot()).unwrap();
        prop_assert!(b >= a - 1e-9 * b);
        prop_assert!(a >= 1.0 - 1e-9 && b <= 1.0 / (1.0 - alpha) + 1e-9);
    }
}
