//! Riemann zeta function and the constant ζ′(−1).
//!
//! Re s ≥ −1/2 uses Euler–Maclaurin summation; further left goes through
//! the functional equation ζ(s) = 2^s π^{s-1} sin(πs/2) Γ(1-s) ζ(1-s).

use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::{log_gamma, sin_pi, EULER_GAMMA};
use crate::error::{finite, Error, Result};

/// B_2, B_4, ..., B_24.
const BERNOULLI_EVEN: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43_867.0 / 798.0,
    -174_611.0 / 330.0,
    854_513.0 / 138.0,
    -236_364_091.0 / 2730.0,
];

/// A complex number together with its derivative in s.
#[derive(Clone, Copy, Debug)]
struct Dual {
    v: Complex64,
    d: Complex64,
}

impl Dual {
    fn mul(self, o: Dual) -> Dual {
        Dual {
            v: self.v * o.v,
            d: self.d * o.v + self.v * o.d,
        }
    }
}

/// n^{-s} together with its s-derivative.
fn power_dual(n: f64, s: Complex64) -> Dual {
    let ln_n = n.ln();
    let v = (-s * ln_n).exp();
    Dual { v, d: -ln_n * v }
}

/// Euler–Maclaurin evaluation of ζ and ζ′ at s ≠ 1.
fn zeta_euler_maclaurin(s: Complex64) -> Dual {
    let one = Complex64::new(1.0, 0.0);
    let n_terms = 24.0 + s.norm().ceil();
    let n = n_terms as usize;
    let mut v = Complex64::new(0.0, 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    for k in (1..n).rev() {
        let t = power_dual(k as f64, s);
        v += t.v;
        d += t.d;
    }
    let big_n = n as f64;
    let ln_n = big_n.ln();
    let n_pow = power_dual(big_n, s); // N^{-s}
                                      // N^{1-s}/(s-1)
    let sm1 = s - one;
    let head = big_n * n_pow.v / sm1;
    v += head + 0.5 * n_pow.v;
    d += -ln_n * head - head / sm1 + 0.5 * n_pow.d;

    // Σ_k B_{2k}/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1}
    let mut poch = Dual { v: s, d: one };
    let mut fact = 2.0; // (2k)!
    let mut npow = Dual {
        v: n_pow.v / big_n,
        d: n_pow.d / big_n,
    };
    for (i, b) in BERNOULLI_EVEN.iter().enumerate() {
        let k = (i + 1) as f64;
        let term = poch.mul(npow);
        let tv = term.v * (b / fact);
        v += tv;
        d += term.d * (b / fact);
        if tv.norm() < 1e-18 * v.norm() {
            break;
        }
        let a = Dual {
            v: s + (2.0 * k - 1.0),
            d: one,
        };
        let b2 = Dual {
            v: s + 2.0 * k,
            d: one,
        };
        poch = poch.mul(a).mul(b2);
        fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
        npow.v /= big_n * big_n;
        npow.d /= big_n * big_n;
    }
    Dual { v, d }
}

/// Analytically continued ζ(s).
pub fn riemann_zeta(s: Complex64) -> Result<Complex64> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole {
            function: "riemann_zeta",
            at: s,
        });
    }
    if s.re >= -0.5 {
        return finite("riemann_zeta", s, zeta_euler_maclaurin(s).v);
    }
    let one = Complex64::new(1.0, 0.0);
    let w = one - s;
    let sine = sin_pi(s / 2.0);
    if sine == Complex64::new(0.0, 0.0) {
        // trivial zeros at the negative even integers
        return Ok(Complex64::new(0.0, 0.0));
    }
    let log_factor = s * 2f64.ln() + (s - 1.0) * PI.ln() + log_gamma(w)?;
    let value = log_factor.exp() * sine * zeta_euler_maclaurin(w).v;
    finite("riemann_zeta", s, value)
}

/// ζ′(s) for Re s ≥ 1/2, s ≠ 1.
pub fn riemann_zeta_derivative(s: Complex64) -> Result<Complex64> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole {
            function: "riemann_zeta_derivative",
            at: s,
        });
    }
    if s.re < 0.5 {
        return Err(Error::Domain(format!(
            "riemann_zeta_derivative is implemented for Re s >= 1/2, got {s}"
        )));
    }
    finite("riemann_zeta_derivative", s, zeta_euler_maclaurin(s).d)
}

/// ζ′(−1), obtained from ζ′(2) through log A = (γ + log 2π)/12 − ζ′(2)/(2π²)
/// and ζ′(−1) = 1/12 − log A (A the Glaisher–Kinkelin constant).
pub fn zeta_prime_minus_one() -> f64 {
    let zp2 = zeta_euler_maclaurin(Complex64::new(2.0, 0.0)).d.re;
    let log_glaisher = (EULER_GAMMA + (2.0 * PI).ln()) / 12.0 - zp2 / (2.0 * PI * PI);
    1.0 / 12.0 - log_glaisher
}

/// Σ_{k>K} k^{-p} for p ≥ 2, by Euler–Maclaurin at the lower end.
pub(crate) fn power_tail(big_k: usize, p: u32) -> f64 {
    let k = big_k as f64;
    let p = p as f64;
    let kp = k.powf(-p);
    let mut sum = k * kp / (p - 1.0) - 0.5 * kp;
    sum += p * kp / k / 12.0;
    sum -= p * (p + 1.0) * (p + 2.0) * kp / k.powi(3) / 720.0;
    sum += p * (p + 1.0) * (p + 2.0) * (p + 3.0) * (p + 4.0) * kp / k.powi(5) / 30_240.0;
    sum
}
