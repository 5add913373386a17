//! Adaptive Gauss-Kronrod (10/21 point) quadrature.
//!
//! Globally adaptive bisection in the style of QUADPACK's QAG: the segment
//! with the largest error estimate is split until the summed estimate meets
//! `max(abs_tol, rel_tol * |I|)`. Known interior breakpoints can be supplied
//! so peaks and kinks start on a segment boundary.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::scalar::Real;

const XGK: [f64; 11] = [
    0.995_657_163_025_808_1,
    0.973_906_528_517_171_7,
    0.930_157_491_355_708_2,
    0.865_063_366_688_984_5,
    0.780_817_726_586_416_9,
    0.679_409_568_299_024_4,
    0.562_757_134_668_604_7,
    0.433_395_394_129_247_2,
    0.294_392_862_701_460_2,
    0.148_874_338_981_631_2,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874,
    0.032_558_162_307_964_73,
    0.054_755_896_574_351_996,
    0.075_039_674_810_919_95,
    0.093_125_454_583_697_6,
    0.109_387_158_802_297_64,
    0.123_491_976_262_065_85,
    0.134_709_217_311_473_33,
    0.142_775_938_577_060_08,
    0.147_739_104_901_338_5,
    0.149_445_554_002_916_9,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_14,
    0.149_451_349_150_580_6,
    0.219_086_362_515_982_04,
    0.269_266_719_309_996_36,
    0.295_524_224_714_752_87,
];

/// Tolerances and limits for the adaptive integrator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig<T> {
    pub abs_tol: T,
    pub rel_tol: T,
    pub max_segments: usize,
}

impl<T: Real> Default for QuadConfig<T> {
    fn default() -> Self {
        Self {
            abs_tol: T::zero(),
            rel_tol: T::default_rel_tol(),
            max_segments: 2000,
        }
    }
}

impl<T: Real> QuadConfig<T> {
    pub fn with_rel_tol(rel_tol: T) -> Self {
        Self {
            rel_tol,
            ..Self::default()
        }
    }

    fn target(&self, value: T) -> T {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature<T> {
    pub value: T,
    pub error_estimate: T,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment<T> {
    a: T,
    b: T,
    value: T,
    error: T,
}

impl<T: Real> PartialEq for Segment<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl<T: Real> Eq for Segment<T> {}

impl<T: Real> PartialOrd for Segment<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Real> Ord for Segment<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .partial_cmp(&other.error)
            .unwrap_or(Ordering::Equal)
    }
}

/// One 21-point Kronrod pass with the QUADPACK error heuristic.
fn gk21<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T) -> Segment<T> {
    let half = T::lit(0.5);
    let center = half * (a + b);
    let half_len = half * (b - a);
    let abs_half = half_len.abs();

    let fc = f(center);
    let mut res_g = T::zero();
    let mut res_k = T::lit(WGK[10]) * fc;
    let mut res_abs = res_k.abs();
    let mut f1 = [T::zero(); 10];
    let mut f2 = [T::zero(); 10];

    for j in 0..5 {
        let k = 2 * j + 1;
        let dx = half_len * T::lit(XGK[k]);
        let (v1, v2) = (f(center - dx), f(center + dx));
        f1[k] = v1;
        f2[k] = v2;
        res_g = res_g + T::lit(WG[j]) * (v1 + v2);
        res_k = res_k + T::lit(WGK[k]) * (v1 + v2);
        res_abs = res_abs + T::lit(WGK[k]) * (v1.abs() + v2.abs());
    }
    for j in 0..5 {
        let k = 2 * j;
        let dx = half_len * T::lit(XGK[k]);
        let (v1, v2) = (f(center - dx), f(center + dx));
        f1[k] = v1;
        f2[k] = v2;
        res_k = res_k + T::lit(WGK[k]) * (v1 + v2);
        res_abs = res_abs + T::lit(WGK[k]) * (v1.abs() + v2.abs());
    }

    let mean = res_k * half;
    let mut res_asc = T::lit(WGK[10]) * (fc - mean).abs();
    for k in 0..10 {
        res_asc = res_asc + T::lit(WGK[k]) * ((f1[k] - mean).abs() + (f2[k] - mean).abs());
    }

    let value = res_k * half_len;
    res_abs = res_abs * abs_half;
    res_asc = res_asc * abs_half;
    let mut error = ((res_k - res_g) * half_len).abs();
    if res_asc != T::zero() && error != T::zero() {
        let scaled = (T::lit(200.0) * error / res_asc).powf(T::lit(1.5));
        error = res_asc * scaled.min(T::one());
    }
    let fifty_eps = T::lit(50.0) * T::epsilon();
    if res_abs > T::min_positive_value() / fifty_eps {
        error = error.max(fifty_eps * res_abs);
    }

    Segment { a, b, value, error }
}

/// Integrates `f` over `[a, b]`.
pub fn integrate<T: Real, F: Fn(T) -> T>(
    f: F,
    a: T,
    b: T,
    cfg: &QuadConfig<T>,
) -> Result<Quadrature<T>> {
    integrate_with_breaks(f, &[a, b], cfg)
}

/// Integrates `f` over `[points[0], points[last]]`, starting with one
/// segment per consecutive pair of `points` (which must be non-decreasing).
pub fn integrate_with_breaks<T: Real, F: Fn(T) -> T>(
    f: F,
    points: &[T],
    cfg: &QuadConfig<T>,
) -> Result<Quadrature<T>> {
    if points.len() < 2 {
        return Err(Error::Domain(
            "quadrature needs at least two endpoints".into(),
        ));
    }
    if points.iter().any(|p| !p.is_finite()) || points.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Domain(
            "quadrature breakpoints must be finite and increasing".into(),
        ));
    }

    let mut heap = BinaryHeap::new();
    let mut value = T::zero();
    let mut error = T::zero();
    for w in points.windows(2) {
        if w[1] == w[0] {
            continue;
        }
        let seg = gk21(&f, w[0], w[1]);
        value = value + seg.value;
        error = error + seg.error;
        heap.push(seg);
    }
    let mut evaluations = 21 * heap.len();

    while error > cfg.target(value) {
        if heap.len() >= cfg.max_segments {
            return Err(non_convergence(value, error, cfg));
        }
        let Some(worst) = heap.pop() else { break };
        let mid = T::lit(0.5) * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // segment is at the resolution limit
            return Err(non_convergence(value, error, cfg));
        }
        let left = gk21(&f, worst.a, mid);
        let right = gk21(&f, mid, worst.b);
        evaluations += 42;
        value = value - worst.value + left.value + right.value;
        error = error - worst.error + left.error + right.error;
        heap.push(left);
        heap.push(right);
        if !value.is_finite() {
            return Err(Error::Domain(
                "integrand produced a non-finite value".into(),
            ));
        }
    }

    // Re-sum to drop the drift of the incremental updates.
    let (value, error_estimate) = heap
        .iter()
        .fold((T::zero(), T::zero()), |(v, e), s| (v + s.value, e + s.error));
    Ok(Quadrature {
        value,
        error_estimate,
        evaluations,
    })
}

/// Integrates `f` over `[a, ∞)` through the map `x = a + (1 - s) / s`.
pub fn integrate_semi_infinite<T: Real, F: Fn(T) -> T>(
    f: F,
    a: T,
    cfg: &QuadConfig<T>,
) -> Result<Quadrature<T>> {
    let mapped = |s: T| {
        let x = a + (T::one() - s) / s;
        let v = f(x) / (s * s);
        if v.is_finite() {
            v
        } else {
            T::zero()
        }
    };
    integrate(mapped, T::zero(), T::one(), cfg)
}

fn non_convergence<T: Real>(value: T, error: T, cfg: &QuadConfig<T>) -> Error {
    Error::QuadratureNonConvergence {
        value: value.as_f64(),
        error_estimate: error.as_f64(),
        target: cfg.target(value).as_f64(),
    }
}
