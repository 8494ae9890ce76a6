//! Surface signatures (g; n; m₁, …, m_v), hyperbolic area, the constants of the
//! determinant formula and the integer order tables of Z(s) and R(s).

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scattering::ScatteringModel;
use crate::special::zeta_prime_minus_one;

/// Type data of a cofinite hyperbolic surface.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    genus: u32,
    cusps: u32,
    orders: Vec<u32>,
}

impl Signature {
    /// Rejects ramification orders below 2 and non-positive area.
    pub fn new(genus: u32, cusps: u32, orders: Vec<u32>) -> Result<Self> {
        if let Some(bad) = orders.iter().find(|&&m| m < 2) {
            return Err(Error::InvalidSignature(format!(
                "ramification order {bad} is below 2"
            )));
        }
        // 2g - 2 + n + Σ(1 - 1/m) > 0, checked exactly over the common denominator
        let lcm = orders.iter().fold(1i128, |acc, &m| lcm(acc, m as i128));
        let mut numerator = (2 * genus as i128 - 2 + cusps as i128) * lcm;
        for &m in &orders {
            numerator += lcm - lcm / m as i128;
        }
        if numerator <= 0 {
            return Err(Error::InvalidSignature(format!(
                "({genus};{cusps};{}) has non-positive hyperbolic area",
                join_orders(&orders, ",")
            )));
        }
        Ok(Signature {
            genus,
            cusps,
            orders,
        })
    }

    /// PSL(2, Z): type (0; 1; 2, 3).
    pub fn modular() -> Self {
        Signature::new(0, 1, vec![2, 3]).expect("modular signature is valid")
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn cusps(&self) -> u32 {
        self.cusps
    }

    /// Ramification indices m_j.
    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    /// Number v of ramification points.
    pub fn elliptic_count(&self) -> u32 {
        self.orders.len() as u32
    }

    /// 2g − 2 + n.
    pub fn euler_term(&self) -> i64 {
        2 * self.genus as i64 - 2 + self.cusps as i64
    }

    /// |X| / 2π = 2g − 2 + n + Σ(1 − 1/m_j).
    pub fn area_over_2pi(&self) -> f64 {
        self.euler_term() as f64
            + self
                .orders
                .iter()
                .map(|&m| 1.0 - 1.0 / m as f64)
                .sum::<f64>()
    }

    /// Hyperbolic area |X|.
    pub fn area(&self) -> f64 {
        2.0 * PI * self.area_over_2pi()
    }

    /// ∏ m_j (1 for an empty list).
    pub fn order_product(&self) -> f64 {
        self.orders.iter().map(|&m| m as f64).product()
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: i128, b: i128) -> i128 {
    a / gcd(a, b) * b
}

fn join_orders(orders: &[u32], sep: &str) -> String {
    orders
        .iter()
        .map(|m| m.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

/// Text form `g,n,m1:m2:...:mv`; the ramification list may be empty (`2,0,`).
impl FromStr for Signature {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.trim().split(',').collect();
        if parts.len() < 2 || parts.len() > 3 {
            return Err(Error::InvalidSignature(format!(
                "expected `g,n,m1:m2:...`, got `{text}`"
            )));
        }
        let int = |field: &str, what: &str| -> Result<u32> {
            field.trim().parse::<u32>().map_err(|_| {
                Error::InvalidSignature(format!("{what} `{field}` is not a non-negative integer"))
            })
        };
        let genus = int(parts[0], "genus")?;
        let cusps = int(parts[1], "cusp count")?;
        let orders = match parts.get(2).map(|s| s.trim()) {
            None | Some("") => Vec::new(),
            Some(list) => list
                .split(':')
                .map(|m| int(m, "ramification order"))
                .collect::<Result<Vec<_>>>()?,
        };
        Signature::new(genus, cusps, orders)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{}",
            self.genus,
            self.cusps,
            join_orders(&self.orders, ":")
        )
    }
}

/// Constants entering the determinant formula, plus log 𝓔.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurfaceConstants {
    pub area: f64,
    /// A = n − Tr Φ(1/2), always even.
    pub a: i64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    /// log 𝓔 = Σ (m²−1)/(6m) log m + (|X|/2π)(2ζ′(−1) − 1/4).
    pub log_e: f64,
}

impl SurfaceConstants {
    /// (−1)^{A/2} as an exact sign.
    pub fn a_sign(&self) -> f64 {
        if (self.a / 2) % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }
}

/// Σ_j (m_j² − 1)/(6 m_j) log m_j.
pub(crate) fn elliptic_log_sum(sig: &Signature) -> f64 {
    sig.orders
        .iter()
        .map(|&m| {
            let m = m as f64;
            (m * m - 1.0) / (6.0 * m) * m.ln()
        })
        .sum()
}

pub fn constants(sig: &Signature, model: &ScatteringModel) -> Result<SurfaceConstants> {
    if model.cusps() != sig.cusps {
        return Err(Error::Mismatch {
            signature: sig.cusps,
            model: model.cusps(),
        });
    }
    let alpha = sig.area_over_2pi();
    let n = sig.cusps as f64;
    let a = model.a();
    let zp = zeta_prime_minus_one();
    let ln2 = 2f64.ln();
    let ln2pi = (2.0 * PI).ln();
    let ell = elliptic_log_sum(sig);
    Ok(SurfaceConstants {
        area: sig.area(),
        a,
        b: -alpha,
        c: -n * ln2,
        d: ell + 0.5 * n * ln2pi - alpha * (0.5 * ln2pi - 2.0 * zp) - 0.5 * a as f64 * ln2,
        log_e: ell + alpha * (2.0 * zp - 0.25),
    })
}

/// An integer or half-integer point, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInteger(i64);

impl HalfInteger {
    pub fn from_twice(twice: i64) -> Self {
        HalfInteger(twice)
    }

    pub fn integer(k: i64) -> Self {
        HalfInteger(2 * k)
    }

    pub fn twice(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for HalfInteger {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let t = text.trim();
        let bad = || Error::Domain(format!("`{text}` is not an integer or half-integer"));
        if let Some((num, den)) = t.split_once('/') {
            let num: i64 = num.trim().parse().map_err(|_| bad())?;
            return match den.trim() {
                "1" => Ok(HalfInteger(2 * num)),
                "2" => Ok(HalfInteger(num)),
                _ => Err(bad()),
            };
        }
        if let Ok(k) = t.parse::<i64>() {
            return Ok(HalfInteger(2 * k));
        }
        let x: f64 = t.parse().map_err(|_| bad())?;
        let twice = 2.0 * x;
        if twice.fract() != 0.0 || !twice.is_finite() {
            return Err(bad());
        }
        Ok(HalfInteger(twice as i64))
    }
}

/// s_k = (2k+1)(2g−2+n) + 2 Σ_j (k − ⌊k/m_j⌋), the zero order of Z at −k.
fn negative_integer_zero_order(sig: &Signature, k: i64) -> i64 {
    let elliptic: i64 = sig.orders.iter().map(|&m| k - k / m as i64).sum();
    (2 * k + 1) * sig.euler_term() + 2 * elliptic
}

/// Order of Z at an integer or half-integer point; positive = zero, negative = pole.
///
/// `n0` is the order of vanishing of φ at 0 (a pole of φ gives a negative `n0`).
pub fn order_z(sig: &Signature, n0: i64, point: HalfInteger) -> Result<i64> {
    let twice = point.twice();
    match twice {
        2 => Ok(1),
        0 => Ok(2 * sig.genus as i64 - 1 + sig.cusps as i64 - n0),
        t if t > 2 => Ok(0),
        1 => Err(Error::Domain(
            "the order of Z at s = 1/2 depends on the discrete spectrum".into(),
        )),
        t if t % 2 != 0 => Ok(-(sig.cusps as i64)),
        t => Ok(negative_integer_zero_order(sig, -t / 2)),
    }
}

/// o_k = 2[2g − 2 + n + v − #{j : m_j | k}].
fn ruelle_negative_order(sig: &Signature, k: i64) -> i64 {
    let divisible = sig.orders.iter().filter(|&&m| k % m as i64 == 0).count() as i64;
    2 * (sig.euler_term() + sig.elliptic_count() as i64 - divisible)
}

/// Order of R(s) = Z(s)/Z(s+1) at an integer point.
pub fn order_r(sig: &Signature, n0: i64, point: i64) -> i64 {
    match point {
        1 => 1,
        p if p >= 2 => 0,
        0 => sig.euler_term() - n0,
        -1 => 2 * (sig.euler_term() + sig.elliptic_count() as i64) + n0 - 1,
        p => ruelle_negative_order(sig, -p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scattering::ScatteringModel;

    fn sig(text: &str) -> Signature {
        text.parse().unwrap()
    }

    #[test]
    fn area_examples() {
        assert!((sig("0,1,2:3").area() - PI / 3.0).abs() < 1e-15);
        assert!((sig("2,0,").area() - 4.0 * PI).abs() < 1e-15);
        assert!((sig("0,3").area() - 2.0 * PI).abs() < 1e-15);
    }

    #[test]
    fn rejects_degenerate_signatures() {
        assert!(Signature::new(0, 0, vec![2, 3, 6]).is_err()); // zero area
        assert!(Signature::new(1, 0, vec![]).is_err()); // flat torus
        assert!(Signature::new(0, 2, vec![]).is_err());
        assert!(Signature::new(0, 0, vec![2, 3, 7]).is_ok());
        assert!(Signature::new(0, 1, vec![1, 3]).is_err());
        assert!("x,1,2".parse::<Signature>().is_err());
        assert!("0".parse::<Signature>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for text in ["0,1,2:3", "2,0,", "1,1,2"] {
            assert_eq!(sig(text).to_string(), text);
        }
    }

    #[test]
    fn modular_constants() {
        let k = constants(&Signature::modular(), &ScatteringModel::modular()).unwrap();
        assert_eq!(k.a, 2);
        assert!((k.b + 1.0 / 6.0).abs() < 1e-15);
        assert!((k.c + 2f64.ln()).abs() < 1e-15);
        assert_eq!(k.a_sign(), -1.0);
    }

    #[test]
    fn compact_constants() {
        let k = constants(&sig("2,0,"), &ScatteringModel::trivial()).unwrap();
        let zp = zeta_prime_minus_one();
        assert_eq!(k.a, 0);
        assert_eq!(k.c, 0.0);
        let d = -2.0 * (0.5 * (2.0 * PI).ln() - 2.0 * zp);
        assert!((k.d - d).abs() < 1e-14);
        assert!((k.log_e - 2.0 * (2.0 * zp - 0.25)).abs() < 1e-14);
    }

    #[test]
    fn constants_require_matching_cusps() {
        let err = constants(&sig("2,0,"), &ScatteringModel::modular()).unwrap_err();
        assert_eq!(
            err,
            Error::Mismatch {
                signature: 0,
                model: 1
            }
        );
    }

    #[test]
    fn order_examples() {
        let m = Signature::modular();
        assert_eq!(order_z(&m, 1, HalfInteger::integer(-1)).unwrap(), 1);
        assert_eq!(order_z(&m, 1, HalfInteger::integer(0)).unwrap(), -1);
        assert_eq!(order_z(&m, 1, HalfInteger::integer(1)).unwrap(), 1);
        assert_eq!(order_z(&m, 1, HalfInteger::from_twice(-3)).unwrap(), -1);
        assert_eq!(order_z(&m, 1, HalfInteger::integer(2)).unwrap(), 0);
        assert!(order_z(&m, 1, HalfInteger::from_twice(1)).is_err());
        assert_eq!(
            order_z(&sig("2,0,"), 0, HalfInteger::integer(-1)).unwrap(),
            6
        );

        assert_eq!(order_r(&m, 1, 0), -2);
        assert_eq!(order_r(&m, 1, -6), -2);
        assert_eq!(order_r(&m, 1, -1), 2);
        assert_eq!(order_r(&m, 1, -5), 2);
        assert_eq!(order_r(&m, 1, 1), 1);
        assert_eq!(order_r(&m, 1, 3), 0);
    }

    #[test]
    fn half_integer_parsing() {
        assert_eq!(
            "-1/2".parse::<HalfInteger>().unwrap(),
            HalfInteger::from_twice(-1)
        );
        assert_eq!(
            "-1.5".parse::<HalfInteger>().unwrap(),
            HalfInteger::from_twice(-3)
        );
        assert_eq!(
            "-4".parse::<HalfInteger>().unwrap(),
            HalfInteger::integer(-4)
        );
        assert!("0.25".parse::<HalfInteger>().is_err());
        assert!("1/3".parse::<HalfInteger>().is_err());
        assert_eq!(HalfInteger::from_twice(-5).to_string(), "-5/2");
    }
}
