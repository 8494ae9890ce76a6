//! Barnes double gamma Γ₂, normalised by Γ₂(1) = 1 and Γ₂(s) = Γ(s) Γ₂(s+1).
//!
//! For Re s > 1/2 the Weierstrass product
//!
//! ```text
//! Γ₂(s+1) = (2π)^{-s/2} exp(s/2 + (γ+1) s²/2) ∏_{k≥1} (1 + s/k)^{-k} exp(s - s²/(2k))
//! ```
//! is truncated at `gamma2_cutoff` factors; the remaining factors are summed
//! through the power series of their logarithms with exact tails Σ_{k>K} k^{-p}.
//! Smaller real parts are moved into that region with the recursion.

use num_complex::Complex64;

use super::gamma::{log_gamma, nonpositive_integer, EULER_GAMMA, HALF_LN_2PI};
use super::zeta::power_tail;
use crate::error::{finite, Error, Result};
use crate::options::EvalOptions;

/// Highest power j of s kept in the analytic tail Σ_{k>K} (-1)^j s^j / (j k^{j-1}).
const TAIL_MAX_POWER: u32 = 8;

/// Below this |s/k| a factor's logarithm is summed as a power series.
const SERIES_RADIUS: f64 = 0.25;

/// k Σ_{j≥3} (-1)^j x^j / j  =  -k [log(1+x) - x + x²/2],  x = s/k.
fn factor_log(s: Complex64, k: f64) -> Complex64 {
    let x = s / k;
    if x.norm() > SERIES_RADIUS {
        return s - s * s / (2.0 * k) - k * (Complex64::new(1.0, 0.0) + x).ln();
    }
    let mut pow = x * x * x;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut j = 3u32;
    loop {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let term = pow * (sign / j as f64);
        sum += term;
        if term.norm() <= 1e-18 * sum.norm() || j > 80 {
            break;
        }
        pow *= x;
        j += 1;
    }
    k * sum
}

/// log Γ₂(1 + s) from the truncated product, valid for Re s > -1.
fn log_gamma2_shifted(s: Complex64, opts: &EvalOptions) -> Result<Complex64> {
    let cutoff = opts.gamma2_cutoff();
    let kf = cutoff as f64;
    if s.norm() * 4.0 > kf {
        return Err(Error::Convergence {
            function: "log_barnes_gamma2",
            detail: format!("|s| = {} too large for product cutoff {cutoff}", s.norm()),
        });
    }
    let mut sum = Complex64::new(0.0, 0.0);
    for k in (1..=cutoff).rev() {
        sum += factor_log(s, k as f64);
    }
    // Σ_{k>K} Σ_{j=3}^{8} (-1)^j s^j / (j k^{j-1})
    let mut tail = Complex64::new(0.0, 0.0);
    let mut pow = s * s * s;
    for j in 3..=TAIL_MAX_POWER {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        tail += pow * (sign * power_tail(cutoff, j - 1) / j as f64);
        pow *= s;
    }
    // first neglected term, j = 9
    let neglected = pow.norm() * power_tail(cutoff, TAIL_MAX_POWER) / (TAIL_MAX_POWER + 1) as f64;

    let head = -s * HALF_LN_2PI + s / 2.0 + (EULER_GAMMA + 1.0) * s * s / 2.0;
    let total = head + sum + tail;
    if neglected > opts.rel_tol() * total.norm().max(1.0) {
        return Err(Error::Convergence {
            function: "log_barnes_gamma2",
            detail: format!("tail estimate {neglected:e} exceeds tolerance at s = {s}"),
        });
    }
    Ok(total)
}

/// log Γ₂(s). Analytic on `C \ (-∞, 0]` and real on the positive axis.
///
/// Γ₂ has a pole of order k+1 at s = -k (k = 0, 1, 2, ...).
pub fn log_barnes_gamma2(s: Complex64, opts: &EvalOptions) -> Result<Complex64> {
    if let Some(n) = nonpositive_integer(s) {
        return Err(Error::PoleOfOrder {
            function: "log_barnes_gamma2",
            at: s,
            order: (1 - n) as u32,
        });
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let mut w = s;
    while w.re <= 0.5 {
        acc += log_gamma(w)?;
        w += 1.0;
    }
    let value = acc + log_gamma2_shifted(w - 1.0, opts)?;
    finite("log_barnes_gamma2", s, value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn normalisation() {
        let opts = EvalOptions::default();
        assert!(log_barnes_gamma2(c(1.0, 0.0), &opts).unwrap().norm() < 1e-14);
        assert!(log_barnes_gamma2(c(2.0, 0.0), &opts).unwrap().norm() < 1e-12);
        let v = log_barnes_gamma2(c(4.0, 0.0), &opts).unwrap();
        assert!((v - c(0.5f64.ln(), 0.0)).norm() < 1e-12, "{v}");
    }

    #[test]
    fn pole_orders() {
        let opts = EvalOptions::default();
        for (s, order) in [(0.0, 1), (-1.0, 2), (-3.0, 4)] {
            match log_barnes_gamma2(c(s, 0.0), &opts) {
                Err(Error::PoleOfOrder { order: o, .. }) => assert_eq!(o, order),
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn small_cutoff_rejects_large_arguments() {
        let opts = EvalOptions::new(64, 1e-12, 40).unwrap();
        assert!(matches!(
            log_barnes_gamma2(c(9.0, 5.0), &opts),
            Err(Error::Convergence { .. })
        ));
    }

    #[test]
    fn factor_log_series_matches_direct_form() {
        let s = c(0.7, -1.3);
        let k = 8.0;
        let direct = s - s * s / (2.0 * k) - k * (c(1.0, 0.0) + s / k).ln();
        let x = s / k;
        let mut series = c(0.0, 0.0);
        let mut pow = x * x * x;
        for j in 3..60 {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            series += pow * (sign / j as f64);
            pow *= x;
        }
        assert!((direct - k * series).norm() < 1e-13);
        assert!((factor_log(s, k) - direct).norm() < 1e-13);
    }
}
