use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by every numerical routine in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{function} has a pole at {at}")]
    Pole {
        function: &'static str,
        at: Complex64,
    },

    #[error("{function} has a pole of order {order} at {at}")]
    PoleOfOrder {
        function: &'static str,
        at: Complex64,
        order: u32,
    },

    #[error(
        "elliptic factor Gamma((s+{k})/{m}) hits a pole (ramification point #{j}) at s = {at}"
    )]
    EllipticPole {
        j: usize,
        k: u32,
        m: u32,
        at: Complex64,
    },

    #[error("{function} did not converge: {detail}")]
    Convergence {
        function: &'static str,
        detail: String,
    },

    #[error("{0}")]
    Domain(String),

    #[error("cusp count mismatch: signature has {signature} cusps, scattering model has {model}")]
    Mismatch { signature: u32, model: u32 },

    #[error("order fit failed: slope {slope} is not within {tolerance} of an integer")]
    Fit { slope: f64, tolerance: f64 },

    #[error("word {0} is a proper power, not primitive")]
    NonPrimitive(String),

    #[error("word {0} uses a single letter; its matrix is parabolic (trace 2)")]
    SingleLetter(String),

    #[error("enumeration produced more than {limit} classes")]
    Capacity { limit: usize },

    #[error("integer overflow multiplying the matrix of word {0}")]
    Overflow(String),

    #[error("length spectrum is empty")]
    EmptySpectrum,

    #[error("factor `{factor}` is singular at s = {at}")]
    SingularFactor { factor: &'static str, at: Complex64 },

    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("invalid scattering model: {0}")]
    InvalidModel(String),

    #[error("invalid options: {0}")]
    InvalidOptions(String),

    #[error("non-finite result from {function} at {at}")]
    NonFinite {
        function: &'static str,
        at: Complex64,
    },

    #[error("spectrum cache: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors that stem from evaluating at or near a singularity,
    /// or from a failed numerical procedure, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Pole { .. }
                | Error::PoleOfOrder { .. }
                | Error::EllipticPole { .. }
                | Error::Convergence { .. }
                | Error::Fit { .. }
                | Error::SingularFactor { .. }
                | Error::NonFinite { .. }
                | Error::Overflow(_)
                | Error::Capacity { .. }
                | Error::EmptySpectrum
        )
    }
}

pub(crate) fn finite(function: &'static str, at: Complex64, value: Complex64) -> Result<Complex64> {
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { function, at })
    }
}
