//! Complex special functions: log Γ, ψ, ζ, Barnes Γ₂ and ζ′(−1).

mod barnes;
mod gamma;
mod zeta;

pub use barnes::log_barnes_gamma2;
pub use gamma::{
    cos_pi, digamma, gamma, gauss_multiplication_defect, ln_gamma_real, log_gamma, recip_gamma,
    sin_pi, EULER_GAMMA, HALF_LN_2PI,
};
pub use zeta::{riemann_zeta, riemann_zeta_derivative, zeta_prime_minus_one};
