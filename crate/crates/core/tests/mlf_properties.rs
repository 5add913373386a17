//! Mittag-Leffler evaluation against high-precision references and the
//! identities the family satisfies.

use frac_hawkes::mlf::{
    mlf_one_param, mlf_pdf, mlf_survival_via_mixture, mlf_two_param, MlfArg, TwoParamIndex,
};
use frac_hawkes::quadrature::{integrate, QuadConfig};
use frac_hawkes::special::{gamma, rgamma};
use proptest::prelude::*;
use statrs::function::erf::erfc;

/// (β, t, E_β(-t^β), f_β(t)) from 40-digit mpmath evaluation (power series
/// below x^(1/β) = 8, the integral representation above, cross-checked to
/// 1e-25 where both apply).
const REFERENCE: &[(f64, f64, f64, f64)] = &[
    (0.3, 1e-6, 0.98261748755993123817, 5132.8494714280985959),
    (0.3, 0.01, 0.77723771508837145386, 5.3000006044467840836),
    (0.3, 0.5, 0.51044382864094466483, 0.15549849609336169312),
    (0.3, 1.0, 0.45659440832969066901, 0.077316799030089675954),
    (0.3, 3.0, 0.37364894580679398318, 0.024327463686017272078),
    (0.3, 10.0, 0.29073943190859569753, 0.0064192223736727210883),
    (0.3, 30.0, 0.22561759661461026518, 0.0018064873142435364651),
    (0.3, 100.0, 0.16717994263449271337, 0.00042965322652048281812),
    (0.3, 1000.0, 0.090085099179551305999, 0.000025037065004264643992),
    (0.3, 10000.0, 0.046841984565450122312, 1.3532137266559817468e-6),
    (0.3, 1000000.0, 0.012096937742994333983, 3.5953692471569728595e-9),
    (0.5, 1e-6, 0.99887262008115140863, 563.19071092767513554),
    (0.5, 0.01, 0.89645697996912664193, 4.7454388555084362275),
    (0.5, 0.5, 0.52315658373024674336, 0.27472797707261861252),
    (0.5, 1.0, 0.42758357615580700441, 0.13660600739194928254),
    (0.5, 3.0, 0.28734124953345624795, 0.038393758401823699771),
    (0.5, 10.0, 0.17057771832597265526, 0.0078346932893044561967),
    (0.5, 30.0, 0.10136909344029227197, 0.0016373604325582827883),
    (0.5, 100.0, 0.056140992743822585858, 0.00027796561095304283729),
    (0.5, 1000.0, 0.017832333888542050408, 8.9072729856607375722e-6),
    (0.5, 10000.0, 0.0056416137829894329036, 2.8205248812996592434e-7),
    (0.5, 1000000.0, 0.0005641893014533876542, 2.8209436863274833442e-10),
    (0.7, 1e-6, 0.99993056335797408163, 48.60340612382669874),
    (0.7, 0.01, 0.95743414183538571903, 2.8942060695541324719),
    (0.7, 0.5, 0.54582672905990237136, 0.41064078014523021082),
    (0.7, 1.0, 0.39961197811559938437, 0.2103933463890237074),
    (0.7, 3.0, 0.19749296015597680145, 0.04862434271845450694),
    (0.7, 10.0, 0.077362952000355498514, 0.0060836944082773554894),
    (0.7, 30.0, 0.033258741567213560239, 0.00083108730084922342362),
    (0.7, 100.0, 0.013738939227872674105, 0.000099223749988536376496),
    (0.7, 1000.0, 0.0026722208018677733758, 1.8824874179336106112e-6),
    (0.7, 10000.0, 0.00053046171546034020578, 3.7179605873245461264e-8),
    (0.7, 1000000.0, 0.000021092254178628300375, 1.4765326487872999848e-11),
    (0.9, 1e-6, 0.99999586067368865545, 3.7253851719658608325),
    (0.9, 0.01, 0.98366988767527001319, 1.456395959404420398),
    (0.9, 0.5, 0.58261346700863095559, 0.54781237133662774605),
    (0.9, 1.0, 0.37606602142464188118, 0.30814879777662194201),
    (0.9, 3.0, 0.10148660560547142376, 0.052029746781623177046),
    (0.9, 10.0, 0.017259379513631203518, 0.002090367816734634441),
    (0.9, 30.0, 0.0053528032644826132971, 0.000175119304310151101),
    (0.9, 100.0, 0.0017113705332184073285, 0.000015826849393758981713),
    (0.9, 1000.0, 0.0002104263244703048964, 1.9001379515610780106e-7),
    (0.9, 10000.0, 0.000026414369198882178562, 2.378283919028804107e-9),
    (0.9, 1000000.0, 4.1846794122574188788e-7, 3.7662363279841395722e-13),
];

fn survival(t: f64, beta: f64) -> f64 {
    mlf_one_param(&MlfArg::new(t, beta).unwrap()).unwrap()
}

fn pdf(t: f64, beta: f64) -> f64 {
    mlf_pdf(&MlfArg::new(t, beta).unwrap()).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

#[test]
fn matches_reference_table() {
    for &(beta, t, s, p) in REFERENCE {
        let got_s = survival(t, beta);
        let got_p = pdf(t, beta);
        assert!(rel(got_s, s) <= 1e-10, "survival β={beta} t={t}: {got_s} vs {s}");
        assert!(rel(got_p, p) <= 1e-10, "pdf β={beta} t={t}: {got_p} vs {p}");
    }
}

#[test]
fn series_consistency_inside_unit_disc() {
    // Direct 64-term summation with the crate's Γ; for |z| ≤ 1 no cancellation.
    for &(g, d) in &[(0.3, 1.0), (0.5, 0.5), (0.7, 0.7), (0.9, 1.0), (1.0, 1.0), (0.6, 1.4)] {
        let idx = TwoParamIndex::new(g, d).unwrap();
        for i in 0..=20 {
            let z = -(i as f64) / 20.0;
            let direct: f64 = (0..64)
                .map(|n| z.powi(n) / gamma(g * n as f64 + d))
                .sum();
            let got = mlf_two_param(z, &idx).unwrap();
            assert!((got - direct).abs() <= 1e-12, "γ={g} δ={d} z={z}: {got} vs {direct}");
        }
    }
}

#[test]
fn exponential_degeneration() {
    for i in 0..=500 {
        let t = i as f64 * 0.1;
        let e = (-t).exp();
        assert!((survival(t, 1.0) - e).abs() <= 1e-12);
        assert!((pdf(t, 1.0) - e).abs() <= 1e-12);
    }
}

#[test]
fn half_order_closed_form() {
    // E_{1/2}(-√t) = e^t erfc(√t)
    for i in 0..=1000 {
        let t = i as f64 * 0.05;
        let want = t.exp() * erfc(t.sqrt());
        let got = survival(t, 0.5);
        assert!((got - want).abs() <= 1e-8, "t={t}: {got} vs {want}");
    }
}

#[test]
fn density_is_normalised() {
    let cfg = QuadConfig::with_rel_tol(1e-11);
    for &beta in &[0.3, 0.5, 0.7, 0.9] {
        // [0, 1]: t = w^(1/β) removes the t^(β-1) singularity.
        let head = integrate(
            |w: f64| {
                if w == 0.0 {
                    return 1.0 / (beta * gamma(beta));
                }
                let t = w.powf(1.0 / beta);
                pdf(t, beta) * t / (beta * w)
            },
            0.0,
            1.0,
            &cfg,
        )
        .unwrap()
        .value;
        // [1, A] in log time.
        let upper: f64 = 1e8;
        let body = integrate(
            |v: f64| {
                let t = v.exp();
                pdf(t, beta) * t
            },
            0.0,
            upper.ln(),
            &cfg,
        )
        .unwrap()
        .value;
        // Power-law tail beyond A from the leading asymptotic terms of the survival function.
        let x = upper.powf(beta);
        let tail: f64 = (1..6)
            .map(|k| {
                let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                sign * x.powi(-k) * rgamma(1.0 - beta * k as f64)
            })
            .sum();
        let total = head + body + tail;
        assert!((total - 1.0).abs() <= 1e-6, "β={beta}: ∫f = {total}");
    }
}

#[test]
fn density_is_negative_derivative_of_survival() {
    for &beta in &[0.3, 0.5, 0.7, 0.9] {
        for t in log_grid(1e-3, 1e3, 25) {
            let h = 1e-3 * t;
            let d = (-survival(t + 2.0 * h, beta) + 8.0 * survival(t + h, beta)
                - 8.0 * survival(t - h, beta)
                + survival(t - 2.0 * h, beta))
                / (12.0 * h);
            let p = pdf(t, beta);
            assert!(rel(-d, p) <= 1e-5, "β={beta} t={t}: {} vs {p}", -d);
        }
    }
}

#[test]
fn power_law_tail() {
    let cases: &[(f64, f64)] = &[(0.5, 1e3), (0.7, 1e3), (0.9, 1e3), (0.3, 1e6)];
    for &(beta, t0) in cases {
        for t in log_grid(t0, 1e6_f64.max(t0 * 10.0), 8) {
            let ratio = survival(t, beta) * gamma(1.0 - beta) * t.powf(beta);
            assert!((ratio - 1.0).abs() <= 0.01, "β={beta} t={t}: ratio {ratio}");
        }
    }
}

#[test]
fn exponential_mixture_identity() {
    let cfg = QuadConfig::default();
    for &beta in &[0.3, 0.5, 0.7, 0.9] {
        for t in log_grid(1e-3, 1e3, 13) {
            let arg = MlfArg::new(t, beta).unwrap();
            let mixed = mlf_survival_via_mixture(&arg, &cfg).unwrap();
            let direct = survival(t, beta);
            assert!((mixed - direct).abs() <= 1e-8, "β={beta} t={t}");
        }
    }
}

proptest! {
    #[test]
    fn survival_decreasing_in_unit_interval(beta in 0.05f64..=1.0, t in 0.0f64..1e4, dt in 1e-3f64..10.0) {
        let a = survival(t, beta);
        let b = survival(t + dt, beta);
        prop_assert!(a > 0.0 && a <= 1.0);
        prop_assert!(b > 0.0 && b < a, "β={} t={} dt={}: {} !< {}", beta, t, dt, b, a);
    }

    #[test]
    fn density_positive(beta in 0.05f64..=1.0, t in 1e-8f64..1e5) {
        prop_assert!(pdf(t, beta) > 0.0);
    }
}
