//! Scattering-determinant models φ(s) = det Φ(s).
//!
//! Only determinant-level data is modelled: φ itself, its order n₀ and leading
//! coefficient φ̃(0) at s = 0, the value φ(1/2) = ±1 and the even integer
//! A = n − Tr Φ(1/2).

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::special::{log_gamma, recip_gamma, riemann_zeta};

pub type PhiFn = Arc<dyn Fn(Complex64) -> Result<Complex64> + Send + Sync>;

/// Radii used by the log-log slope fit at s = 0.
pub const FIT_RADII: [f64; 3] = [1e-2, 1e-3, 1e-4];

/// Allowed distance of the fitted slope from an integer.
pub const FIT_SLOPE_TOLERANCE: f64 = 0.01;

/// Step of the four-point Richardson limit at removable singularities.
const RICHARDSON_STEP: f64 = 2e-4;

/// Distance below which a point counts as sitting on a removable singularity.
const REMOVABLE_RADIUS: f64 = 1e-6;

#[derive(Clone)]
pub struct ScatteringModel {
    label: String,
    cusps: u32,
    phi: PhiFn,
    n0: i64,
    phi_tilde_0: f64,
    phi_half: f64,
    a: i64,
    stated_phi_tilde_0: Option<f64>,
}

impl fmt::Debug for ScatteringModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScatteringModel")
            .field("label", &self.label)
            .field("cusps", &self.cusps)
            .field("n0", &self.n0)
            .field("phi_tilde_0", &self.phi_tilde_0)
            .field("phi_half", &self.phi_half)
            .field("a", &self.a)
            .field("stated_phi_tilde_0", &self.stated_phi_tilde_0)
            .finish_non_exhaustive()
    }
}

impl ScatteringModel {
    /// Builds a model from determinant data.
    ///
    /// When `a` is `None` it is derived from (−1)^{A/2} = φ(1/2) and
    /// 0 ≤ A ≤ 2n, which is only unambiguous for n ≤ 1.
    pub fn new(
        label: impl Into<String>,
        cusps: u32,
        phi: PhiFn,
        n0: i64,
        phi_tilde_0: f64,
        phi_half: f64,
        a: Option<i64>,
    ) -> Result<Self> {
        if !(phi_tilde_0.is_finite() && phi_tilde_0 != 0.0) {
            return Err(Error::InvalidModel(
                "leading coefficient of phi at 0 must be finite and non-zero".into(),
            ));
        }
        if phi_half != 1.0 && phi_half != -1.0 {
            return Err(Error::InvalidModel(format!(
                "phi(1/2) must be +1 or -1, got {phi_half}"
            )));
        }
        if cusps == 0 && phi_half != 1.0 {
            return Err(Error::InvalidModel(
                "a cusp-free model has phi = 1 identically".into(),
            ));
        }
        let max_a = 2 * cusps as i64;
        let a = match a {
            Some(a) => a,
            None => {
                let candidates: Vec<i64> = (0..=cusps as i64)
                    .map(|half| 2 * half)
                    .filter(|&a| sign_of_half(a) == phi_half)
                    .collect();
                match candidates.as_slice() {
                    [only] => *only,
                    _ => {
                        return Err(Error::InvalidModel(format!(
                        "A is not determined by phi(1/2) = {phi_half} for {cusps} cusps; supply it"
                    )))
                    }
                }
            }
        };
        if a % 2 != 0 || a < 0 || a > max_a {
            return Err(Error::InvalidModel(format!(
                "A = {a} must be even with 0 <= A <= {max_a}"
            )));
        }
        if sign_of_half(a) != phi_half {
            return Err(Error::InvalidModel(format!(
                "(-1)^(A/2) = {} disagrees with phi(1/2) = {phi_half}",
                sign_of_half(a)
            )));
        }
        Ok(ScatteringModel {
            label: label.into(),
            cusps,
            phi,
            n0,
            phi_tilde_0,
            phi_half,
            a,
            stated_phi_tilde_0: None,
        })
    }

    /// Attaches a reference value of φ̃(0) quoted from elsewhere, kept for
    /// comparison with the numerically validated one.
    pub fn with_stated_phi_tilde_0(mut self, value: f64) -> Self {
        self.stated_phi_tilde_0 = Some(value);
        self
    }

    /// PSL(2, Z): φ(s) = √π Γ(s−1/2)/Γ(s) · ζ(2s−1)/ζ(2s).
    ///
    /// Expanding the four factors at 0 gives φ(s) = −(π/3) s + O(s²), so the
    /// stored leading coefficient is −π/3; the commonly quoted +π/3 is kept
    /// as the stated value.
    pub fn modular() -> Self {
        ScatteringModel::new(
            "modular",
            1,
            Arc::new(modular_phi),
            1,
            -PI / 3.0,
            -1.0,
            Some(2),
        )
        .expect("modular model data is consistent")
        .with_stated_phi_tilde_0(PI / 3.0)
    }

    /// Cusp-free surfaces: φ ≡ 1.
    pub fn trivial() -> Self {
        ScatteringModel::new(
            "trivial",
            0,
            Arc::new(|_| Ok(Complex64::new(1.0, 0.0))),
            0,
            1.0,
            1.0,
            Some(0),
        )
        .expect("trivial model data is consistent")
    }

    /// Looks up a bundled model by its CLI name.
    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "modular" => Ok(Self::modular()),
            "trivial" => Ok(Self::trivial()),
            other => Err(Error::InvalidModel(format!(
                "unknown group `{other}` (expected modular or trivial)"
            ))),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn cusps(&self) -> u32 {
        self.cusps
    }

    pub fn phi(&self, s: Complex64) -> Result<Complex64> {
        (self.phi)(s)
    }

    /// Order of φ at s = 0 (negative for a pole).
    pub fn n0(&self) -> i64 {
        self.n0
    }

    pub fn phi_tilde_0(&self) -> f64 {
        self.phi_tilde_0
    }

    pub fn stated_phi_tilde_0(&self) -> Option<f64> {
        self.stated_phi_tilde_0
    }

    pub fn phi_half(&self) -> f64 {
        self.phi_half
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    /// Checks the stored data against numerical evaluation of φ.
    pub fn validate(&self, tolerance: f64) -> Result<ModelValidation> {
        let half = self.phi(Complex64::new(0.5, 0.0))?;
        let leading = phi_leading_at_zero(self)?;
        let report = ModelValidation {
            phi_half_numeric: half,
            n0_numeric: leading.n0,
            phi_tilde_0_numeric: leading.coeff,
            slope: leading.slope,
        };
        if (half - self.phi_half).norm() > tolerance {
            return Err(Error::InvalidModel(format!(
                "stored phi(1/2) = {} but numeric value is {half}",
                self.phi_half
            )));
        }
        if leading.n0 != self.n0 {
            return Err(Error::InvalidModel(format!(
                "stored n0 = {} but fitted order is {}",
                self.n0, leading.n0
            )));
        }
        if (leading.coeff.abs() - self.phi_tilde_0.abs()).abs() > tolerance * self.phi_tilde_0.abs()
        {
            return Err(Error::InvalidModel(format!(
                "stored |phi~(0)| = {} but numeric value is {}",
                self.phi_tilde_0.abs(),
                leading.coeff.abs()
            )));
        }
        Ok(report)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelValidation {
    pub phi_half_numeric: Complex64,
    pub n0_numeric: i64,
    pub phi_tilde_0_numeric: f64,
    pub slope: f64,
}

/// (−1)^{A/2} for even A.
pub(crate) fn sign_of_half(a: i64) -> f64 {
    if (a / 2).rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

fn modular_phi_direct(s: Complex64) -> Result<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    let num = riemann_zeta(2.0 * s - one)?;
    let den = riemann_zeta(2.0 * s)?;
    if den == Complex64::new(0.0, 0.0) {
        return Err(Error::Pole {
            function: "modular_phi",
            at: s,
        });
    }
    let value = PI.sqrt() * log_gamma(s - 0.5)?.exp() * recip_gamma(s)? * num / den;
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(Error::Pole {
            function: "modular_phi",
            at: s,
        })
    }
}

/// Nearest removable singularity of the modular formula: s = 1/2 − k (k ≥ 0)
/// or s = −k (k ≥ 1).
fn nearest_removable(s: Complex64) -> Option<Complex64> {
    let half = (s.re - 0.5).round() + 0.5;
    let int = s.re.round();
    let mut best: Option<Complex64> = None;
    if half <= 0.5 {
        best = Some(Complex64::new(half, 0.0));
    }
    if int <= -1.0 {
        let p = Complex64::new(int, 0.0);
        if best.map_or(true, |b| (s - p).norm() < (s - b).norm()) {
            best = Some(p);
        }
    }
    best.filter(|p| (s - p).norm() < REMOVABLE_RADIUS)
}

/// Four-point symmetric Richardson limit of `f` at `s`.
pub fn richardson_limit<F>(f: F, s: Complex64, h: f64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let near = (f(s + h)? + f(s - h)?) / 2.0;
    let far = (f(s + 2.0 * h)? + f(s - 2.0 * h)?) / 2.0;
    Ok((4.0 * near - far) / 3.0)
}

/// The modular-group scattering determinant.
///
/// The formula has removable singularities at s = 1/2, −1/2, −3/2, … and at the
/// negative integers; there the value is the Richardson limit.
pub fn modular_phi(s: Complex64) -> Result<Complex64> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole {
            function: "modular_phi",
            at: s,
        });
    }
    if nearest_removable(s).is_some() {
        return richardson_limit(modular_phi_direct, s, RICHARDSON_STEP);
    }
    modular_phi_direct(s)
}

/// Numerically determined order and leading coefficient of φ at 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeadingTerm {
    pub n0: i64,
    pub coeff: f64,
    pub slope: f64,
}

/// Fits the order of φ at 0 from the log-log slope over [`FIT_RADII`] and
/// extrapolates the leading coefficient from symmetric samples ±r.
pub fn phi_leading_at_zero(model: &ScatteringModel) -> Result<LeadingTerm> {
    let mut log_abs = [0.0; 3];
    for (slot, &r) in log_abs.iter_mut().zip(FIT_RADII.iter()) {
        let v = model.phi(Complex64::new(r, 0.0))?;
        *slot = v.norm().ln();
    }
    let slopes: Vec<f64> = (0..2)
        .map(|i| (log_abs[i] - log_abs[i + 1]) / (FIT_RADII[i].ln() - FIT_RADII[i + 1].ln()))
        .collect();
    let slope = slopes[1];
    let n0 = slope.round();
    for &sl in &slopes {
        if (sl - n0).abs() > FIT_SLOPE_TOLERANCE {
            return Err(Error::Fit {
                slope: sl,
                tolerance: FIT_SLOPE_TOLERANCE,
            });
        }
    }
    let n0 = n0 as i64;
    // even part of φ(s)/s^{n0} is φ̃(0) + O(s²); Neville extrapolation in r² to 0
    let mut xs = [0.0; 3];
    let mut ys = [0.0; 3];
    for (i, &r) in FIT_RADII.iter().enumerate() {
        let plus = model.phi(Complex64::new(r, 0.0))? / r.powi(n0 as i32);
        let minus = model.phi(Complex64::new(-r, 0.0))? / (-r).powi(n0 as i32);
        xs[i] = r * r;
        ys[i] = ((plus + minus) / 2.0).re;
    }
    let coeff = neville_at_zero(&xs, &ys);
    Ok(LeadingTerm { n0, coeff, slope })
}

/// Polynomial extrapolation of (xs, ys) to x = 0.
pub(crate) fn neville_at_zero(xs: &[f64], ys: &[f64]) -> f64 {
    let mut p = ys.to_vec();
    let n = xs.len();
    for level in 1..n {
        for i in 0..n - level {
            let (xi, xj) = (xs[i], xs[i + level]);
            p[i] = (xj * p[i] - xi * p[i + 1]) / (xj - xi);
        }
    }
    p[0]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn modular_value_at_half() {
        let v = modular_phi(c(0.5, 0.0)).unwrap();
        assert!((v - c(-1.0, 0.0)).norm() < 1e-10, "{v}");
    }

    #[test]
    fn modular_pole_at_one() {
        assert!(matches!(modular_phi(c(1.0, 0.0)), Err(Error::Pole { .. })));
    }

    #[test]
    fn modular_zero_at_origin() {
        assert_eq!(modular_phi(c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn removable_points_are_finite() {
        for s in [-0.5, -1.5, -1.0, -2.0] {
            let v = modular_phi(c(s, 0.0)).unwrap();
            let nearby = modular_phi_direct(c(s + 1e-3, 1e-3)).unwrap();
            assert!(
                (v - nearby).norm() < 1e-2 * (1.0 + v.norm()),
                "{s}: {v} vs {nearby}"
            );
        }
    }

    #[test]
    fn functional_equation_instance() {
        let p = modular_phi(c(0.3, 0.0)).unwrap() * modular_phi(c(0.7, 0.0)).unwrap();
        assert!((p - c(1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn leading_terms() {
        let lead = phi_leading_at_zero(&ScatteringModel::modular()).unwrap();
        assert_eq!(lead.n0, 1);
        assert!((lead.coeff + PI / 3.0).abs() < 1e-9, "{}", lead.coeff);
        let lead = phi_leading_at_zero(&ScatteringModel::trivial()).unwrap();
        assert_eq!(lead.n0, 0);
        assert!((lead.coeff - 1.0).abs() < 1e-15);
    }

    #[test]
    fn fit_rejects_fractional_order() {
        let model = ScatteringModel::new(
            "sqrt",
            1,
            Arc::new(|s: Complex64| Ok(s.sqrt())),
            0,
            1.0,
            1.0,
            None,
        )
        .unwrap();
        assert!(matches!(
            phi_leading_at_zero(&model),
            Err(Error::Fit { .. })
        ));
    }

    #[test]
    fn a_is_derived_or_rejected() {
        let one: PhiFn = Arc::new(|_| Ok(c(1.0, 0.0)));
        let m = ScatteringModel::new("x", 1, one.clone(), 0, 1.0, -1.0, None).unwrap();
        assert_eq!(m.a(), 2);
        let m = ScatteringModel::new("x", 1, one.clone(), 0, 1.0, 1.0, None).unwrap();
        assert_eq!(m.a(), 0);
        assert!(ScatteringModel::new("x", 2, one.clone(), 0, 1.0, 1.0, None).is_err());
        assert_eq!(
            ScatteringModel::new("x", 2, one.clone(), 0, 1.0, 1.0, Some(4))
                .unwrap()
                .a(),
            4
        );
        assert!(ScatteringModel::new("x", 2, one.clone(), 0, 1.0, -1.0, Some(4)).is_err());
        assert!(ScatteringModel::new("x", 1, one.clone(), 0, 1.0, 0.5, None).is_err());
        assert!(ScatteringModel::new("x", 0, one, 0, 1.0, -1.0, None).is_err());
    }

    #[test]
    fn bundled_models_validate() {
        let v = ScatteringModel::modular().validate(1e-9).unwrap();
        assert_eq!(v.n0_numeric, 1);
        ScatteringModel::trivial().validate(1e-12).unwrap();
        assert!(ScatteringModel::by_name("congruence").is_err());
    }

    #[test]
    fn neville_recovers_quadratic() {
        let xs = [1.0, 2.0, 3.0];
        let ys: Vec<f64> = xs.iter().map(|x| 5.0 - 2.0 * x + 0.5 * x * x).collect();
        assert!((neville_at_zero(&xs, &ys) - 5.0).abs() < 1e-12);
    }
}
