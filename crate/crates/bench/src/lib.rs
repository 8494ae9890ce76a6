//! Benchmark inputs shared by the criterion targets.

use hypzeta_core::{Complex64, Signature};

/// Points spanning the Γ₂ product regime and the recursion regime.
pub fn gamma2_points() -> Vec<Complex64> {
    vec![
        Complex64::new(0.3, -1.0),
        Complex64::new(2.5, 0.0),
        Complex64::new(-1.4, 2.0),
        Complex64::new(6.0, 3.0),
    ]
}

pub fn identity_signatures() -> Vec<Signature> {
    ["0,1,2:3", "0,0,2:3:7", "1,1,2"]
        .iter()
        .map(|t| t.parse().expect("bundled signature"))
        .collect()
}
