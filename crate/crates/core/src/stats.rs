//! Small sample statistics used by the validation suites.

/// Arithmetic mean; NaN for an empty sample.
pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Unbiased sample variance (two-pass).
pub fn sample_variance(xs: &[f64]) -> f64 {
    let m = mean(xs);
    xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() as f64 - 1.0)
}

/// Two-sample Kolmogorov-Smirnov statistic and asymptotic p-value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KsTest {
    pub statistic: f64,
    pub p_value: f64,
}

/// Two-sample KS test. The p-value uses the Kolmogorov limit distribution
/// with Stephens' small-sample correction; with ties (discrete data) it is
/// conservative.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> KsTest {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(|x, y| x.total_cmp(y));
    b.sort_by(|x, y| x.total_cmp(y));
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    let ne = (na * nb / (na + nb)).sqrt();
    KsTest {
        statistic: d,
        p_value: kolmogorov_q((ne + 0.12 + 0.11 / ne) * d),
    }
}

/// Survival function of the Kolmogorov distribution.
pub fn kolmogorov_q(x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    if x < 1.18 {
        // P(K ≤ x) = √(2π)/x Σ exp(-(2k-1)²π²/(8x²))
        let c = -std::f64::consts::PI.powi(2) / (8.0 * x * x);
        let s: f64 = (1..=6)
            .map(|k| ((2 * k - 1) as f64).powi(2))
            .map(|m| (c * m).exp())
            .sum();
        return (1.0 - (2.0 * std::f64::consts::PI).sqrt() / x * s).clamp(0.0, 1.0);
    }
    let s: f64 = (1..=20)
        .map(|k| {
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            sign * (-2.0 * (k * k) as f64 * x * x).exp()
        })
        .sum();
    (2.0 * s).clamp(0.0, 1.0)
}
