//! Selberg and Ruelle zeta functions on cofinite hyperbolic surfaces with
//! cusps and elliptic points: closed-form factors, functional equations,
//! order tables, leading coefficients, and truncated Euler products over the
//! enumerated length spectrum of the modular group.

pub mod error;
pub mod euler;
pub mod factors;
pub mod options;
pub mod report;
pub mod scattering;
pub mod special;
pub mod spectrum;
pub mod surface;
pub mod verify;

pub use error::{Error, Result};
pub use euler::TruncatedValue;
pub use factors::{DetLaplacian, FactorValue, RuelleLeading};
pub use options::EvalOptions;
pub use report::{Check, NamedValue, Report, Value};
pub use scattering::{LeadingTerm, ScatteringModel};
pub use spectrum::{GeodesicClass, LengthSpectrum, ShellTable, Word};
pub use surface::{HalfInteger, Signature, SurfaceConstants};

pub use num_complex::Complex64;
