use std::f64::consts::PI;

use hypzeta_core::special::{
    digamma, gauss_multiplication_defect, ln_gamma_real, log_barnes_gamma2, log_gamma,
    riemann_zeta, riemann_zeta_derivative, zeta_prime_minus_one,
};
use hypzeta_core::{Complex64, EvalOptions};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

/// η(s) by the Borwein alternating-series acceleration, ζ = η / (1 − 2^{1−s}).
fn zeta_borwein(s: Complex64, n: usize) -> Complex64 {
    let mut d = vec![0.0f64; n + 1];
    let mut term = 1.0 / n as f64;
    let mut acc = term;
    d[0] = acc * n as f64;
    for i in 1..=n {
        let (nf, i_f) = (n as f64, i as f64);
        term *= (nf + i_f - 1.0) * 4.0 * (nf - i_f + 1.0) / ((2.0 * i_f) * (2.0 * i_f - 1.0));
        acc += term;
        d[i] = acc * nf;
    }
    let mut eta = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        eta += sign * (d[k] - d[n]) * Complex64::new((k + 1) as f64, 0.0).powc(-s);
    }
    eta = -eta / d[n];
    eta / (1.0 - Complex64::new(2.0, 0.0).powc(1.0 - s))
}

#[test]
fn zeta_matches_borwein_series() {
    for re in [0.1, 0.5, 0.8, 1.5, 2.0, 3.5] {
        for im in [-20.0, -7.5, -1.0, 0.0, 2.5, 14.0, 20.0] {
            let s = c(re, im);
            let expected = zeta_borwein(s, 80);
            let got = riemann_zeta(s).unwrap();
            assert!(
                rel(got, expected) < 1e-11,
                "zeta({s}) = {got}, borwein {expected}"
            );
        }
    }
}

#[test]
fn zeta_pinned_high_precision() {
    let cases = [
        (
            c(0.5, 14.0),
            c(0.022_241_142_609_993_59, -0.103_258_123_266_450_06),
        ),
        (
            c(3.0, 0.5),
            c(1.173_928_724_638_746_8, -0.091_730_267_113_479_45),
        ),
        (c(2.0, 0.0), c(PI * PI / 6.0, 0.0)),
        (c(-1.0, 0.0), c(-1.0 / 12.0, 0.0)),
        (c(0.0, 0.0), c(-0.5, 0.0)),
    ];
    for (s, expected) in cases {
        let got = riemann_zeta(s).unwrap();
        assert!(
            rel(got, expected) < 1e-12,
            "zeta({s}) = {got}, expected {expected}"
        );
    }
}

#[test]
fn zeta_derivative_at_two_matches_direct_sum() {
    // −Σ_{n<N} ln n / n² plus the Euler–Maclaurin tail from N.
    let n_max = 10_000u32;
    let f = |x: f64| x.ln() / (x * x);
    let df = |x: f64| (1.0 - 2.0 * x.ln()) / (x * x * x);
    let head: f64 = (2..n_max).map(|n| f(n as f64)).sum();
    let nf = n_max as f64;
    let tail = (nf.ln() + 1.0) / nf + f(nf) / 2.0 - df(nf) / 12.0;
    let expected = -(head + tail);
    let got = riemann_zeta_derivative(c(2.0, 0.0)).unwrap();
    assert!((got.re - expected).abs() < 1e-12, "{got} vs {expected}");
    assert!(got.im.abs() < 1e-15);

    let via_sum = 1.0 / 12.0 - (EULER_GAMMA + (2.0 * PI).ln()) / 12.0 + expected / (2.0 * PI * PI);
    let pinned = -0.165_421_143_700_450_93;
    assert!((zeta_prime_minus_one() - via_sum).abs() < 1e-12);
    assert!((zeta_prime_minus_one() - pinned).abs() < 1e-13);
}

#[test]
fn log_gamma_matches_statrs_on_real_axis() {
    for i in 1..=400 {
        let x = 0.05 + 0.125 * i as f64;
        let expected = statrs::function::gamma::ln_gamma(x);
        let got = log_gamma(c(x, 0.0)).unwrap();
        assert!(
            (got.re - expected).abs() < 1e-12 * expected.abs().max(1.0),
            "x = {x}"
        );
        assert!(got.im.abs() < 1e-15);
        assert!((ln_gamma_real(x).unwrap() - expected).abs() < 1e-12 * expected.abs().max(1.0));
    }
}

#[test]
fn digamma_matches_statrs_and_series() {
    for i in 1..=100 {
        let x = 0.3 + 0.37 * i as f64;
        let expected = statrs::function::gamma::digamma(x);
        let got = digamma(c(x, 0.0)).unwrap();
        assert!(
            (got.re - expected).abs() < 1e-11 * expected.abs().max(1.0),
            "x = {x}"
        );
    }
    // ψ(1/2) = −γ + Σ_{k≥0} (1/(k+1) − 1/(k+1/2)); the tail past N is −ln((N+3/2)/(N+1)) to O(N⁻³).
    let n = 1_000_000usize;
    let series: f64 = (0..=n)
        .rev()
        .map(|k| 1.0 / (k as f64 + 1.0) - 1.0 / (k as f64 + 0.5))
        .sum();
    let nf = n as f64;
    let expected = -EULER_GAMMA + series - ((nf + 1.5) / (nf + 1.0)).ln();
    let got = digamma(c(0.5, 0.0)).unwrap();
    assert!((got.re - expected).abs() < 1e-12, "{got} vs {expected}");
    assert!((got.re - (-EULER_GAMMA - 2.0 * 2f64.ln())).abs() < 1e-14);

    let pinned = c(0.687_523_593_749_104, 1.672_730_211_056_628_6);
    assert!(rel(digamma(c(0.3, 2.0)).unwrap(), pinned) < 1e-12);
}

#[test]
fn gauss_multiplication_at_rational_points() {
    // ∏_{k=1}^{m−1} Γ(k/m) = (2π)^{(m−1)/2} / √m.
    for m in [2u32, 3, 5, 7] {
        let log_prod: f64 = (1..m)
            .map(|k| statrs::function::gamma::ln_gamma(k as f64 / m as f64))
            .sum();
        let expected = (m as f64 - 1.0) / 2.0 * (2.0 * PI).ln() - 0.5 * (m as f64).ln();
        assert!((log_prod - expected).abs() < 1e-12);
        assert!(gauss_multiplication_defect(c(0.37, -1.2), m).unwrap() < 1e-12);
    }
}

#[test]
fn double_gamma_pinned_high_precision() {
    let opts = EvalOptions::default();
    let half = log_barnes_gamma2(c(0.5, 0.0), &opts).unwrap();
    assert!((half.re - 0.505_433_054_489_695_4).abs() < 1e-12);
    assert!(half.im.abs() < 1e-14);
    // Pinned values are principal logs; compare exponentials.
    let cases = [
        (
            c(0.3, -1.0),
            c(-1.032_326_908_075_798_1, 1.086_620_364_706_356_9),
        ),
        (
            c(3.7, 2.2),
            c(2.158_477_424_397_078_2, -1.304_741_090_100_463_8),
        ),
    ];
    for (s, expected) in cases {
        let got = log_barnes_gamma2(s, &opts).unwrap();
        assert!(rel(got.exp(), expected.exp()) < 1e-11, "Γ₂({s})");
    }
    // Γ₂(1) = 1 and Γ₂(4) = 1/(Γ(1)Γ(2)Γ(3)) = 1/2.
    assert!(log_barnes_gamma2(c(1.0, 0.0), &opts).unwrap().norm() < 1e-13);
    let four = log_barnes_gamma2(c(4.0, 0.0), &opts).unwrap();
    assert!((four.re + 2f64.ln()).abs() < 1e-12);
}

/// k log(1 + s/k) − s + s²/(2k), by its series once |s/k| is small.
fn product_log_term(s: Complex64, k: f64) -> Complex64 {
    let x = s / k;
    if x.norm() > 1e-2 {
        return k * (1.0 + x).ln() - s + s * s / (2.0 * k);
    }
    let mut total = Complex64::new(0.0, 0.0);
    let mut power = x * x * x;
    for j in 3..12 {
        let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
        total += sign * power / j as f64;
        power *= x;
    }
    k * total
}

#[test]
fn double_gamma_matches_truncated_product() {
    // Γ₂(1+s)^{-1} = (2π)^{s/2} e^{−s/2 − (1+γ)s²/2} ∏_k (1+s/k)^k e^{−s + s²/(2k)},
    // summed directly to a large cutoff with the leading s³/(3k²) tail restored.
    let opts = EvalOptions::default();
    let n = 2_000_000usize;
    for s in [c(0.5, 0.0), c(-0.5, 0.3), c(0.2, -0.7)] {
        let mut sum = Complex64::new(0.0, 0.0);
        for k in (1..=n).rev() {
            sum += product_log_term(s, k as f64);
        }
        let tail_zeta2: f64 = 1.0 / n as f64 - 0.5 / (n as f64).powi(2);
        sum += s * s * s / 3.0 * tail_zeta2;
        let log_g = s / 2.0 * (2.0 * PI).ln() - s / 2.0 - (1.0 + EULER_GAMMA) * s * s / 2.0 + sum;
        let expected = -log_g;
        let got = log_barnes_gamma2(s + 1.0, &opts).unwrap();
        assert!(
            rel(got.exp(), expected.exp()) < 1e-10,
            "Γ₂(1+{s}): {got} vs {expected}"
        );
    }
}
