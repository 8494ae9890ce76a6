//! Truncated Euler products for Z(s) = ∏_P ∏_{k≥0} (1 − p^{−s−k}) and
//! R(s) = ∏_P (1 − p^{−s}) on Re s > 1.
//!
//! Classes enter only through per-trace shells (count, norm). The trace-tail
//! term is an extrapolated estimate, not a proven bound.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::options::EvalOptions;
use crate::spectrum::{Shell, ShellTable};

pub const MIN_K_CUTOFF: usize = 10;
/// Multiplier on the extrapolated trace tail.
pub const TAIL_SAFETY_FACTOR: f64 = 10.0;
/// Estimates above this fraction of |value| are flagged.
pub const UNRELIABLE_FRACTION: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncatedValue {
    pub value: Complex64,
    pub log_value: Complex64,
    /// k-tail bound plus trace-tail estimate, propagated to the value.
    pub abs_error_estimate: f64,
    pub k_tail_bound: f64,
    /// Trace-tail contribution to the log, already multiplied by the safety factor.
    pub trace_tail_estimate: f64,
    pub max_trace_used: u32,
    pub k_cutoff_used: usize,
    /// abs_error_estimate exceeds 1% of |value|.
    pub unreliable: bool,
}

fn check_domain(table: &ShellTable, s: Complex64) -> Result<()> {
    if s.re <= 1.0 {
        return Err(Error::Convergence {
            function: "Euler product",
            detail: format!("it converges only for Re s > 1, got s = {s}"),
        });
    }
    if table.class_count() == 0 {
        return Err(Error::EmptySpectrum);
    }
    Ok(())
}

fn occupied(table: &ShellTable, max_trace: u32) -> Vec<Shell> {
    table
        .shells
        .iter()
        .filter(|s| s.trace <= max_trace as u64 && s.count > 0)
        .copied()
        .collect()
}

/// log(1 − w), by its series when |w| is small enough that 1 − w rounds.
fn ln_one_minus(w: Complex64) -> Complex64 {
    if w.norm() > 1e-3 {
        return (1.0 - w).ln();
    }
    let mut total = Complex64::new(0.0, 0.0);
    let mut power = w;
    for j in 1..=6 {
        total -= power / j as f64;
        power *= w;
    }
    total
}

/// Smallest K ≥ 10 with p_min^{−σ−K−1}·count < rel_tol/10.
fn k_cutoff(p_min: f64, sigma: f64, count: u64, rel_tol: f64) -> usize {
    let target = rel_tol / 10.0 / count.max(1) as f64;
    // (σ + K + 1) ln p_min > −ln target
    let needed = (-target.ln() / p_min.ln() - sigma - 1.0).ceil();
    (needed.max(0.0) as usize).max(MIN_K_CUTOFF)
}

/// Geometric extrapolation of the shell magnitudes beyond max_trace.
/// Windows have width ⌈max_trace/5⌉; the last three complete ones are used.
fn trace_tail(magnitudes: &[(u64, f64)], max_trace: u32) -> f64 {
    let width = (max_trace as u64).div_ceil(5).max(1);
    let top = max_trace as u64;
    let window = |i: u64| -> f64 {
        let hi = top - i * width;
        let lo = hi.saturating_sub(width);
        magnitudes
            .iter()
            .filter(|(t, _)| *t > lo && *t <= hi)
            .map(|(_, m)| m)
            .sum()
    };
    if top < 3 * width + 2 {
        return f64::INFINITY;
    }
    let (w1, w2, w3) = (window(2), window(1), window(0));
    if w1 <= 0.0 || w2 <= 0.0 || w3 <= 0.0 {
        return f64::INFINITY;
    }
    let ratio = (w3 / w1).sqrt();
    if ratio >= 1.0 {
        return f64::INFINITY;
    }
    TAIL_SAFETY_FACTOR * w3 * ratio / (1.0 - ratio)
}

fn finish(
    log_value: Complex64,
    k_tail_bound: f64,
    trace_tail_estimate: f64,
    max_trace_used: u32,
    k_cutoff_used: usize,
) -> TruncatedValue {
    let value = log_value.exp();
    let log_err = k_tail_bound + trace_tail_estimate;
    let abs_error_estimate = value.norm() * log_err.exp_m1();
    TruncatedValue {
        value,
        log_value,
        abs_error_estimate,
        k_tail_bound,
        trace_tail_estimate,
        max_trace_used,
        k_cutoff_used,
        unreliable: abs_error_estimate.is_nan()
            || abs_error_estimate > UNRELIABLE_FRACTION * value.norm(),
    }
}

/// Z(s) from all shells with trace ≤ min(table.max_trace, opts.euler_max_trace).
pub fn selberg_z(table: &ShellTable, s: Complex64, opts: &EvalOptions) -> Result<TruncatedValue> {
    check_domain(table, s)?;
    let max_trace = table.max_trace.min(opts.euler_max_trace());
    let shells = occupied(table, max_trace);
    if shells.is_empty() {
        return Err(Error::EmptySpectrum);
    }
    let count: u64 = shells.iter().map(|s| s.count).sum();
    let p_min = shells[0].norm;
    let big_k = k_cutoff(p_min, s.re, count, opts.rel_tol());
    let terms: Vec<(u64, Complex64, f64)> = shells
        .par_iter()
        .map(|sh| {
            let ln_p = sh.norm.ln();
            let log: Complex64 = (0..=big_k)
                .map(|k| ln_one_minus((-(s + k as f64) * ln_p).exp()))
                .sum();
            let k_tail = 2.0 * (-(s.re + big_k as f64 + 1.0) * ln_p).exp() / (1.0 - 1.0 / sh.norm);
            (sh.trace, sh.count as f64 * log, sh.count as f64 * k_tail)
        })
        .collect();
    let log_value: Complex64 = terms.iter().map(|t| t.1).sum();
    let k_tail_bound: f64 = terms.iter().map(|t| t.2).sum();
    let magnitudes: Vec<(u64, f64)> = terms.iter().map(|t| (t.0, t.1.norm())).collect();
    Ok(finish(
        log_value,
        k_tail_bound,
        trace_tail(&magnitudes, max_trace),
        max_trace,
        big_k,
    ))
}

/// R(s) = Z(s)/Z(s+1) with first-order error propagation.
pub fn ruelle_r(table: &ShellTable, s: Complex64, opts: &EvalOptions) -> Result<TruncatedValue> {
    let num = selberg_z(table, s, opts)?;
    let den = selberg_z(table, s + 1.0, opts)?;
    let value = num.value / den.value;
    let rel = num.abs_error_estimate / num.value.norm() + den.abs_error_estimate / den.value.norm();
    let abs_error_estimate = value.norm() * rel;
    Ok(TruncatedValue {
        value,
        log_value: num.log_value - den.log_value,
        abs_error_estimate,
        k_tail_bound: num.k_tail_bound + den.k_tail_bound,
        trace_tail_estimate: num.trace_tail_estimate + den.trace_tail_estimate,
        max_trace_used: num.max_trace_used,
        k_cutoff_used: num.k_cutoff_used,
        unreliable: abs_error_estimate.is_nan()
            || abs_error_estimate > UNRELIABLE_FRACTION * value.norm(),
    })
}

/// R(s) = ∏_P (1 − p^{−s}) evaluated directly.
pub fn ruelle_r_direct(
    table: &ShellTable,
    s: Complex64,
    opts: &EvalOptions,
) -> Result<TruncatedValue> {
    check_domain(table, s)?;
    let max_trace = table.max_trace.min(opts.euler_max_trace());
    let shells = occupied(table, max_trace);
    if shells.is_empty() {
        return Err(Error::EmptySpectrum);
    }
    let terms: Vec<(u64, Complex64)> = shells
        .par_iter()
        .map(|sh| {
            let log = ln_one_minus((-s * sh.norm.ln()).exp());
            (sh.trace, sh.count as f64 * log)
        })
        .collect();
    let log_value: Complex64 = terms.iter().map(|t| t.1).sum();
    let magnitudes: Vec<(u64, f64)> = terms.iter().map(|t| (t.0, t.1.norm())).collect();
    Ok(finish(
        log_value,
        0.0,
        trace_tail(&magnitudes, max_trace),
        max_trace,
        0,
    ))
}
