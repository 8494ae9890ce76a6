//! Closed-form factors of the determinant formula and of the functional
//! equations of Z(s) and R(s), plus the constants c₁, c₀.
//!
//! Every fractional power is assembled as a sum α·log(base) with each base on
//! its own principal (or analytic log-gamma) branch, then exponentiated once.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::options::EvalOptions;
use crate::scattering::{sign_of_half, ScatteringModel};
use crate::special::{ln_gamma_real, log_barnes_gamma2, log_gamma, sin_pi};
use crate::surface::{constants, Signature};

/// A factor carried in log space, with its exponentiated value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorValue {
    pub log_value: Complex64,
    pub value: Complex64,
}

impl FactorValue {
    pub fn from_log(log_value: Complex64) -> Self {
        FactorValue {
            log_value,
            value: log_value.exp(),
        }
    }

    /// `sign · exp(log_rest)` with an exact real sign.
    fn signed(sign: f64, log_rest: Complex64) -> Self {
        let value = sign * log_rest.exp();
        let log_value = if sign < 0.0 {
            log_rest + Complex64::new(0.0, PI)
        } else {
            log_rest
        };
        FactorValue { log_value, value }
    }
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn ln_2pi() -> f64 {
    (2.0 * PI).ln()
}

fn check_cusps(sig: &Signature, model: &ScatteringModel) -> Result<()> {
    if sig.cusps() != model.cusps() {
        return Err(Error::Mismatch {
            signature: sig.cusps(),
            model: model.cusps(),
        });
    }
    Ok(())
}

/// log of (2π)^{s} Γ₂(s)² / Γ(s), without the |X|/2π exponent.
fn log_z_infty_base(s: Complex64, opts: &EvalOptions) -> Result<Complex64> {
    Ok(s * ln_2pi() + 2.0 * log_barnes_gamma2(s, opts)? - log_gamma(s)?)
}

/// Z_∞(s) = ((2π)^s Γ₂(s)² / Γ(s))^{|X|/2π}.
pub fn z_infty(sig: &Signature, s: Complex64, opts: &EvalOptions) -> Result<FactorValue> {
    Ok(FactorValue::from_log(
        sig.area_over_2pi() * log_z_infty_base(s, opts)?,
    ))
}

/// Z_ell(s) = ∏_j ∏_{k<m_j} Γ((s+k)/m_j)^{(2k+1−m_j)/m_j}.
pub fn z_ell(sig: &Signature, s: Complex64) -> Result<FactorValue> {
    let mut log = c(0.0);
    for (j, &m) in sig.orders().iter().enumerate() {
        let mf = m as f64;
        for k in 0..m {
            let exponent = (2.0 * k as f64 + 1.0 - mf) / mf;
            let arg = (s + k as f64) / mf;
            let lg = log_gamma(arg).map_err(|_| Error::EllipticPole { j, k, m, at: s })?;
            log += exponent * lg;
        }
    }
    Ok(FactorValue::from_log(log))
}

/// ∏_j ∏_{k<m_j} [sin(π(s+k)/m_j)]^{(m_j−2k−1)/m_j}, the elliptic ratio
/// Z_ell(s)/Z_ell(1−s).
pub fn elliptic_sine_block(sig: &Signature, s: Complex64) -> Result<FactorValue> {
    let mut log = c(0.0);
    for &m in sig.orders() {
        let mf = m as f64;
        for k in 0..m {
            let base = sin_pi((s + k as f64) / mf);
            if base == c(0.0) {
                return Err(Error::SingularFactor {
                    factor: "elliptic sine block",
                    at: s,
                });
            }
            log += (mf - 2.0 * k as f64 - 1.0) / mf * base.ln();
        }
    }
    Ok(FactorValue::from_log(log))
}

/// Non-fatal note attached to a determinant evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainWarning(pub String);

/// Named logarithmic terms of the determinant formula (Z(s) excluded).
#[derive(Debug, Clone, PartialEq)]
pub struct DetLaplacian {
    pub value: Complex64,
    /// (name, log value) of every factor other than Z(s) and (2s−1)^{A/2}.
    pub log_terms: Vec<(String, Complex64)>,
    /// (2s−1)^{A/2}, an integer power.
    pub a_power: Complex64,
    pub warning: Option<DomainWarning>,
}

/// det(Δ − s(1−s)) = Z_∞ Z Z_ell Γ(s+1/2)^{−n} (2s−1)^{A/2} e^{B(s−1/2)² + C(s−1/2) + D}
/// with Z(s) supplied by the caller.
pub fn det_laplacian(
    sig: &Signature,
    model: &ScatteringModel,
    s: Complex64,
    z_value: Complex64,
    opts: &EvalOptions,
) -> Result<DetLaplacian> {
    let k = constants(sig, model)?;
    let n = sig.cusps() as f64;
    let shifted = s - 0.5;
    let cusp = log_gamma(s + 0.5).map_err(|_| Error::Pole {
        function: "det_laplacian (cusp gamma factor)",
        at: s,
    })?;
    let log_terms = vec![
        ("z_infty".to_string(), z_infty(sig, s, opts)?.log_value),
        ("z_ell".to_string(), z_ell(sig, s)?.log_value),
        ("cusp_gamma".to_string(), -n * cusp),
        (
            "exponential".to_string(),
            k.b * shifted * shifted + k.c * shifted + k.d,
        ),
    ];
    let a_power = (2.0 * s - 1.0).powi((k.a / 2) as i32);
    let log_sum: Complex64 = log_terms.iter().map(|(_, v)| *v).sum();
    let value = log_sum.exp() * z_value * a_power;
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::NonFinite {
            function: "det_laplacian",
            at: s,
        });
    }
    let warning = (s.re <= 1.0).then(|| {
        DomainWarning(format!(
            "Re s = {} <= 1: the Euler product for Z(s) does not converge here, so the supplied Z value is untrusted",
            s.re
        ))
    });
    Ok(DetLaplacian {
        value,
        log_terms,
        a_power,
        warning,
    })
}

/// κ(s) with Z(1−s) = κ(s) Z(s).
pub fn kappa(
    sig: &Signature,
    model: &ScatteringModel,
    s: Complex64,
    opts: &EvalOptions,
) -> Result<FactorValue> {
    check_cusps(sig, model)?;
    let one = c(1.0);
    let alpha = sig.area_over_2pi();
    let n = sig.cusps() as f64;
    let cconst = -n * 2f64.ln();

    let phi = model.phi(s).map_err(|_| Error::SingularFactor {
        factor: "phi",
        at: s,
    })?;
    if phi == c(0.0) || !(phi.re.is_finite() && phi.im.is_finite()) {
        return Err(Error::SingularFactor {
            factor: "phi",
            at: s,
        });
    }
    let gamma_block = (|| -> Result<Complex64> {
        Ok(
            (2.0 * s - 1.0) * ln_2pi() + 2.0 * log_barnes_gamma2(s, opts)? + log_gamma(one - s)?
                - 2.0 * log_barnes_gamma2(one - s, opts)?
                - log_gamma(s)?,
        )
    })()
    .map_err(|_| Error::SingularFactor {
        factor: "gamma block",
        at: s,
    })?;
    let cusp_ratio = if n > 0.0 {
        let r = (|| -> Result<Complex64> { Ok(log_gamma(1.5 - s)? - log_gamma(s + 0.5)?) })()
            .map_err(|_| Error::SingularFactor {
                factor: "cusp gamma ratio",
                at: s,
            })?;
        n * r
    } else {
        c(0.0)
    };
    let sines = elliptic_sine_block(sig, s)?;
    let log_rest =
        cconst * (2.0 * s - 1.0) + phi.ln() + alpha * gamma_block + cusp_ratio + sines.log_value;
    Ok(FactorValue::signed(sign_of_half(model.a()), log_rest))
}

/// Right side of R(s)R(−s) =
/// (φ(s)φ(−s))^{−1} (4 sin²πs)^{2g−2+n} / (4s²−1)^n ∏_j (sin πs / sin(πs/m_j))².
pub fn ruelle_fe_rhs(sig: &Signature, model: &ScatteringModel, s: Complex64) -> Result<Complex64> {
    check_cusps(sig, model)?;
    let n = sig.cusps() as i32;
    let quad = 4.0 * s * s - 1.0;
    if n > 0 && quad == c(0.0) {
        return Err(Error::Pole {
            function: "ruelle_fe_rhs",
            at: s,
        });
    }
    let sine = sin_pi(s);
    let mut elliptic = c(1.0);
    for &m in sig.orders() {
        let denom = sin_pi(s / m as f64);
        if denom == c(0.0) {
            return Err(Error::Pole {
                function: "ruelle_fe_rhs",
                at: s,
            });
        }
        let ratio = sine / denom;
        elliptic *= ratio * ratio;
    }
    let phis = model.phi(s)? * model.phi(-s)?;
    if phis == c(0.0) || !(phis.re.is_finite() && phis.im.is_finite()) {
        return Err(Error::Pole {
            function: "ruelle_fe_rhs",
            at: s,
        });
    }
    let value = (4.0 * sine * sine).powi(sig.euler_term() as i32) / quad.powi(n) * elliptic / phis;
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::Pole {
            function: "ruelle_fe_rhs",
            at: s,
        });
    }
    Ok(value)
}

/// Order and leading coefficient of R at s = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RuelleLeading {
    pub order: i64,
    pub coeff: f64,
}

/// order = 2g−2+n−n₀, coeff = (−1)^{A/2+1} (2π)^{2g−2+n} φ̃(0)^{−1} ∏ m_j,
/// using the model's stored φ̃(0).
pub fn ruelle_leading_at_zero(sig: &Signature, model: &ScatteringModel) -> Result<RuelleLeading> {
    ruelle_leading_with(sig, model, model.phi_tilde_0())
}

/// Same closed form with an explicitly supplied φ̃(0).
pub fn ruelle_leading_with(
    sig: &Signature,
    model: &ScatteringModel,
    phi_tilde_0: f64,
) -> Result<RuelleLeading> {
    check_cusps(sig, model)?;
    let chi = sig.euler_term();
    let sign = -sign_of_half(model.a());
    Ok(RuelleLeading {
        order: chi - model.n0(),
        coeff: sign * (2.0 * PI).powi(chi as i32) / phi_tilde_0 * sig.order_product(),
    })
}

/// Σ_j Σ_{k=1}^{m_j−1} e(k, m_j) log Γ(k/m_j) for an exponent rule e.
fn gamma_fraction_log(sig: &Signature, exponent: impl Fn(f64, f64) -> f64) -> Result<f64> {
    let mut total = 0.0;
    for &m in sig.orders() {
        let mf = m as f64;
        for k in 1..m {
            let kf = k as f64;
            total += exponent(kf, mf) * ln_gamma_real(kf / mf)?;
        }
    }
    Ok(total)
}

/// c₁ with det′Δ = c₁ Z′(1).
pub fn c1(sig: &Signature, model: &ScatteringModel) -> Result<f64> {
    let k = constants(sig, model)?;
    let n = sig.cusps() as f64;
    let log = (n - (k.a / 2) as f64) * 2f64.ln()
        + sig.area() / (4.0 * PI) * ln_2pi()
        + k.log_e
        + gamma_fraction_log(sig, |k, m| (2.0 * k - 1.0 - m) / m)?;
    Ok(log.exp())
}

/// c₀ with det′Δ = c₀ Z̃(0), from its own closed form.
pub fn c0(sig: &Signature, model: &ScatteringModel) -> Result<f64> {
    let k = constants(sig, model)?;
    let n = sig.cusps() as f64;
    let mut log = (n - (k.a / 2) as f64) * 2f64.ln() - sig.area() / (4.0 * PI) * ln_2pi() + k.log_e;
    for &m in sig.orders() {
        let mf = m as f64;
        log -= (mf - 1.0) / mf * mf.ln();
    }
    log += gamma_fraction_log(sig, |k, m| (2.0 * k + 1.0 - m) / m)?;
    let sign = -sign_of_half(model.a());
    Ok(sign * model.phi_tilde_0() * log.exp())
}
