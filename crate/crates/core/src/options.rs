use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Precision and truncation knobs shared by the evaluators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalOptions {
    gamma2_cutoff: usize,
    rel_tol: f64,
    euler_max_trace: u32,
}

impl EvalOptions {
    pub const MIN_GAMMA2_CUTOFF: usize = 64;

    pub fn new(gamma2_cutoff: usize, rel_tol: f64, euler_max_trace: u32) -> Result<Self> {
        if gamma2_cutoff < Self::MIN_GAMMA2_CUTOFF {
            return Err(Error::InvalidOptions(format!(
                "gamma2_cutoff must be >= {}, got {gamma2_cutoff}",
                Self::MIN_GAMMA2_CUTOFF
            )));
        }
        if !(rel_tol > 0.0 && rel_tol.is_finite()) {
            return Err(Error::InvalidOptions(format!(
                "rel_tol must be positive, got {rel_tol}"
            )));
        }
        if euler_max_trace < 3 {
            return Err(Error::InvalidOptions(format!(
                "euler_max_trace must be >= 3, got {euler_max_trace}"
            )));
        }
        Ok(EvalOptions {
            gamma2_cutoff,
            rel_tol,
            euler_max_trace,
        })
    }

    /// Number of factors K kept in the Γ₂ product.
    pub fn gamma2_cutoff(&self) -> usize {
        self.gamma2_cutoff
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn euler_max_trace(&self) -> u32 {
        self.euler_max_trace
    }

    pub fn with_rel_tol(self, rel_tol: f64) -> Result<Self> {
        Self::new(self.gamma2_cutoff, rel_tol, self.euler_max_trace)
    }

    pub fn with_gamma2_cutoff(self, cutoff: usize) -> Result<Self> {
        Self::new(cutoff, self.rel_tol, self.euler_max_trace)
    }

    pub fn with_euler_max_trace(self, max_trace: u32) -> Result<Self> {
        Self::new(self.gamma2_cutoff, self.rel_tol, max_trace)
    }
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            gamma2_cutoff: 10_000,
            rel_tol: 1e-10,
            euler_max_trace: 40,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_range_knobs() {
        assert!(EvalOptions::new(63, 1e-10, 40).is_err());
        assert!(EvalOptions::new(64, 0.0, 40).is_err());
        assert!(EvalOptions::new(64, f64::NAN, 40).is_err());
        assert!(EvalOptions::new(64, 1e-10, 2).is_err());
        assert!(EvalOptions::new(64, 1e-10, 3).is_ok());
    }
}
