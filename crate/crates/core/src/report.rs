//! Machine-readable results: named values and two-sided checks.
//!
//! Complex numbers serialize as `{"re": .., "im": ..}`; non-finite reals as the
//! strings "inf", "-inf", "NaN" so the JSON stays valid and round-trips.

use num_complex::Complex64;
use serde::de::Deserializer;
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Bool(bool),
    Integer(i64),
    Real(f64),
    Complex(Complex64),
    Text(String),
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Value::Integer(v)
    }
}

impl From<u32> for Value {
    fn from(v: u32) -> Self {
        Value::Integer(v as i64)
    }
}

impl From<u64> for Value {
    fn from(v: u64) -> Self {
        Value::Integer(v as i64)
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Integer(v as i64)
    }
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Real(v)
    }
}

impl From<Complex64> for Value {
    fn from(v: Complex64) -> Self {
        Value::Complex(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_string())
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Text(v)
    }
}

fn non_finite_name(x: f64) -> Option<&'static str> {
    if x.is_nan() {
        Some("NaN")
    } else if x == f64::INFINITY {
        Some("inf")
    } else if x == f64::NEG_INFINITY {
        Some("-inf")
    } else {
        None
    }
}

fn serialize_real<S: Serializer>(x: f64, ser: S) -> Result<S::Ok, S::Error> {
    match non_finite_name(x) {
        Some(name) => ser.serialize_str(name),
        None => ser.serialize_f64(x),
    }
}

struct Real(f64);

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        serialize_real(self.0, ser)
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        match self {
            Value::Bool(b) => ser.serialize_bool(*b),
            Value::Integer(i) => ser.serialize_i64(*i),
            Value::Real(x) => serialize_real(*x, ser),
            Value::Complex(z) => {
                let mut st = ser.serialize_struct("Complex", 2)?;
                st.serialize_field("re", &Real(z.re))?;
                st.serialize_field("im", &Real(z.im))?;
                st.end()
            }
            Value::Text(t) => ser.serialize_str(t),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RealRepr {
    Number(f64),
    Name(String),
}

impl RealRepr {
    fn value(self) -> Option<f64> {
        match self {
            RealRepr::Number(x) => Some(x),
            RealRepr::Name(n) => parse_non_finite(&n),
        }
    }
}

fn parse_non_finite(name: &str) -> Option<f64> {
    match name {
        "NaN" => Some(f64::NAN),
        "inf" => Some(f64::INFINITY),
        "-inf" => Some(f64::NEG_INFINITY),
        _ => None,
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ValueRepr {
    Bool(bool),
    Integer(i64),
    Real(f64),
    Complex { re: RealRepr, im: RealRepr },
    Text(String),
}

impl<'de> Deserialize<'de> for Value {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        Ok(match ValueRepr::deserialize(de)? {
            ValueRepr::Bool(b) => Value::Bool(b),
            ValueRepr::Integer(i) => Value::Integer(i),
            ValueRepr::Real(x) => Value::Real(x),
            ValueRepr::Complex { re, im } => match (re.value(), im.value()) {
                (Some(re), Some(im)) => Value::Complex(Complex64::new(re, im)),
                _ => return Err(serde::de::Error::custom("invalid complex component")),
            },
            ValueRepr::Text(t) => match parse_non_finite(&t) {
                Some(x) => Value::Real(x),
                None => Value::Text(t),
            },
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedValue {
    pub name: String,
    pub value: Value,
}

impl NamedValue {
    pub fn new(name: impl Into<String>, value: impl Into<Value>) -> Self {
        NamedValue {
            name: name.into(),
            value: value.into(),
        }
    }
}

/// One comparison with both sides and the tolerance actually applied.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub lhs: Value,
    pub rhs: Value,
    #[serde(serialize_with = "ser_f64", deserialize_with = "de_f64")]
    pub abs_diff: f64,
    #[serde(serialize_with = "ser_f64", deserialize_with = "de_f64")]
    pub tolerance: f64,
    pub pass: bool,
}

fn ser_f64<S: Serializer>(x: &f64, ser: S) -> Result<S::Ok, S::Error> {
    serialize_real(*x, ser)
}

fn de_f64<'de, D: Deserializer<'de>>(de: D) -> Result<f64, D::Error> {
    RealRepr::deserialize(de)?
        .value()
        .ok_or_else(|| serde::de::Error::custom("invalid real"))
}

impl Check {
    /// Passes when |lhs − rhs| ≤ rel_tol·max(1, |rhs|); the scaled tolerance is recorded.
    pub fn close(name: impl Into<String>, lhs: Complex64, rhs: Complex64, rel_tol: f64) -> Self {
        let tolerance = rel_tol * rhs.norm().max(1.0);
        let abs_diff = (lhs - rhs).norm();
        Check {
            name: name.into(),
            lhs: lhs.into(),
            rhs: rhs.into(),
            abs_diff,
            tolerance,
            pass: abs_diff <= tolerance,
        }
    }

    pub fn close_real(name: impl Into<String>, lhs: f64, rhs: f64, rel_tol: f64) -> Self {
        let tolerance = rel_tol * rhs.abs().max(1.0);
        let abs_diff = (lhs - rhs).abs();
        Check {
            name: name.into(),
            lhs: lhs.into(),
            rhs: rhs.into(),
            abs_diff,
            tolerance,
            pass: abs_diff <= tolerance,
        }
    }

    /// Passes when |lhs − rhs| ≤ abs_tol.
    pub fn within(name: impl Into<String>, lhs: Complex64, rhs: Complex64, abs_tol: f64) -> Self {
        let abs_diff = (lhs - rhs).norm();
        Check {
            name: name.into(),
            lhs: lhs.into(),
            rhs: rhs.into(),
            abs_diff,
            tolerance: abs_tol,
            pass: abs_diff <= abs_tol,
        }
    }

    pub fn equal_int(name: impl Into<String>, lhs: i64, rhs: i64) -> Self {
        let abs_diff = (lhs - rhs).unsigned_abs() as f64;
        Check {
            name: name.into(),
            lhs: lhs.into(),
            rhs: rhs.into(),
            abs_diff,
            tolerance: 0.0,
            pass: lhs == rhs,
        }
    }

    pub fn holds(name: impl Into<String>, condition: bool) -> Self {
        Check {
            name: name.into(),
            lhs: condition.into(),
            rhs: true.into(),
            abs_diff: if condition { 0.0 } else { 1.0 },
            tolerance: 0.0,
            pass: condition,
        }
    }

    /// A check whose left side could not be evaluated.
    pub fn failed(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            lhs: Value::Text(reason.into()),
            rhs: Value::Text("value".into()),
            abs_diff: f64::INFINITY,
            tolerance: 0.0,
            pass: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<NamedValue>,
    pub results: Vec<NamedValue>,
    pub checks: Vec<Check>,
    /// Seconds since the Unix epoch; the only field allowed to differ between runs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            inputs: Vec::new(),
            results: Vec::new(),
            checks: Vec::new(),
            timestamp: None,
        }
    }

    pub fn input(&mut self, name: impl Into<String>, value: impl Into<Value>) -> &mut Self {
        self.inputs.push(NamedValue::new(name, value));
        self
    }

    pub fn result(&mut self, name: impl Into<String>, value: impl Into<Value>) -> &mut Self {
        self.results.push(NamedValue::new(name, value));
        self
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}
