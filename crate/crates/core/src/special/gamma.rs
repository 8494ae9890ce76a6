//! Complex log-gamma, digamma and the reciprocal gamma function.
//!
//! `log_gamma` is the analytic branch of log Γ that is real on the positive
//! axis, continued to `C \ (-∞, 0]`. On the negative real axis the limit from
//! the upper half plane is returned, so `exp(log_gamma(x))` still reproduces Γ.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{finite, Error, Result};

/// ½ log 2π.
pub const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// B_{2k} / (2k (2k - 1)), k = 1..=10.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43_867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

/// B_{2k} / (2k), k = 1..=7.
const DIGAMMA_ASYMPTOTIC: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32_760.0,
    1.0 / 12.0,
];

/// |z| beyond which the asymptotic series are used directly.
const ASYMPTOTIC_RADIUS: f64 = 15.0;

pub(crate) fn nonpositive_integer(z: Complex64) -> Option<i64> {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        Some(z.re as i64)
    } else {
        None
    }
}

/// Number of unit shifts needed before the asymptotic expansion is accurate.
fn shift_count(z: Complex64) -> usize {
    if z.im.abs() >= ASYMPTOTIC_RADIUS {
        if z.re >= 0.0 {
            0
        } else {
            (-z.re).ceil() as usize
        }
    } else if z.re >= ASYMPTOTIC_RADIUS {
        0
    } else {
        (ASYMPTOTIC_RADIUS - z.re).ceil() as usize
    }
}

fn stirling(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    for c in STIRLING.iter().rev() {
        series = series * inv2 + c;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_2PI + series * inv
}

/// log Γ(s) on the analytic branch described in the module docs.
pub fn log_gamma(s: Complex64) -> Result<Complex64> {
    if nonpositive_integer(s).is_some() {
        return Err(Error::Pole {
            function: "log_gamma",
            at: s,
        });
    }
    let shift = shift_count(s);
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..shift {
        acc += (s + k as f64).ln();
    }
    finite("log_gamma", s, stirling(s + shift as f64) - acc)
}

/// Real-argument convenience wrapper; returns the real part of [`log_gamma`].
pub fn ln_gamma_real(x: f64) -> Result<f64> {
    log_gamma(Complex64::new(x, 0.0)).map(|v| v.re)
}

/// Γ(s) as a complex number.
pub fn gamma(s: Complex64) -> Result<Complex64> {
    log_gamma(s).map(|v| v.exp())
}

/// ψ(s) = d/ds log Γ(s).
pub fn digamma(s: Complex64) -> Result<Complex64> {
    if nonpositive_integer(s).is_some() {
        return Err(Error::Pole {
            function: "digamma",
            at: s,
        });
    }
    let shift = shift_count(s);
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..shift {
        acc += (s + k as f64).inv();
    }
    let z = s + shift as f64;
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    for c in DIGAMMA_ASYMPTOTIC.iter().rev() {
        series = series * inv2 + c;
    }
    let value = z.ln() - 0.5 * inv - series * inv2 - acc;
    finite("digamma", s, value)
}

/// sin(πz) with the real part reduced exactly, so integer arguments give exact zeros.
pub fn sin_pi(z: Complex64) -> Complex64 {
    let (s, c) = sincos_pi_real(z.re);
    let y = PI * z.im;
    Complex64::new(s * y.cosh(), c * y.sinh())
}

/// cos(πz) with exact reduction of the real part.
pub fn cos_pi(z: Complex64) -> Complex64 {
    let (s, c) = sincos_pi_real(z.re);
    let y = PI * z.im;
    Complex64::new(c * y.cosh(), -s * y.sinh())
}

fn sincos_pi_real(x: f64) -> (f64, f64) {
    // x = n + r with |r| <= 1/2
    let n = x.round();
    let r = x - n;
    let (mut s, mut c) = (PI * r).sin_cos();
    if r == 0.0 {
        s = 0.0;
    }
    if r.abs() == 0.5 {
        c = 0.0;
    }
    if (n as i64).rem_euclid(2) == 1 {
        (-s, -c)
    } else {
        (s, c)
    }
}

/// 1/Γ(s); entire, exactly zero at the non-positive integers.
pub fn recip_gamma(s: Complex64) -> Result<Complex64> {
    if nonpositive_integer(s).is_some() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    if s.re < 0.5 {
        // 1/Γ(s) = sin(πs) Γ(1 - s) / π
        let value = sin_pi(s) * log_gamma(Complex64::new(1.0, 0.0) - s)?.exp() / PI;
        finite("recip_gamma", s, value)
    } else {
        finite("recip_gamma", s, (-log_gamma(s)?).exp())
    }
}

/// Relative defect of the Gauss multiplication formula
/// Γ(s) = (2π)^{(1-m)/2} m^{s-1/2} ∏_{k<m} Γ((s+k)/m).
pub fn gauss_multiplication_defect(s: Complex64, m: u32) -> Result<f64> {
    if m == 0 {
        return Err(Error::Domain("multiplication order m must be >= 1".into()));
    }
    let mf = m as f64;
    let lhs = log_gamma(s)?.exp();
    let mut log_rhs = (1.0 - mf) * HALF_LN_2PI + (s - 0.5) * mf.ln();
    for k in 0..m {
        log_rhs += log_gamma((s + k as f64) / mf)?;
    }
    Ok((lhs - log_rhs.exp()).norm() / lhs.norm())
}
