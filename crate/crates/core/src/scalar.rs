//! Arithmetic modes.
//!
//! Every evaluation routine is generic over [`Scalar`], implemented by
//! [`Rational`] (exact, arbitrary precision) and `f64` (fast path). Mixing the
//! two is a type error. Subset-enumeration passes run on an accumulator type
//! after clearing denominators, so the exact path sums big integers and only
//! normalizes fractions once per output entry.

use std::fmt::Debug;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::spectral::{EigenSignature, SymMatrix};

pub type Rational = BigRational;

/// Ring used inside the enumeration kernels.
pub trait Accumulator: Clone + Debug + Send + Sync + Zero + One {
    fn from_u64(v: u64) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn add_ref(&mut self, other: &Self);
    fn sub_ref(&mut self, other: &Self);
}

impl Accumulator for BigInt {
    fn from_u64(v: u64) -> Self {
        BigInt::from(v)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn add_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_ref(&mut self, other: &Self) {
        *self -= other;
    }
}

impl Accumulator for f64 {
    fn from_u64(v: u64) -> Self {
        v as f64
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn add_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_ref(&mut self, other: &Self) {
        *self -= other;
    }
}

/// Which arithmetic a computation runs in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Exact,
    Float,
}

pub trait Scalar: Clone + Debug + PartialOrd + Signed + Send + Sync + 'static {
    type Acc: Accumulator;
    const MODE: Mode;

    fn from_i64(v: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn to_f64(&self) -> f64;
    fn from_acc(acc: &Self::Acc) -> Self;

    /// Returns `(acc, scale)` with `values[i] == acc[i] * scale` and `scale > 0`.
    fn split_common(values: &[Self]) -> (Vec<Self::Acc>, Self);

    /// Inertia of a symmetric matrix: congruence reduction in exact mode,
    /// eigendecomposition with a relative zero threshold in float mode.
    fn inertia(m: &SymMatrix<Self>) -> Result<EigenSignature>;

    /// Equality for identity checks; exact in rational mode, relative
    /// tolerance `1e-10` in float mode.
    fn approx_eq(a: &Self, b: &Self) -> bool;

    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;

    fn powi(&self, e: i32) -> Self {
        let mut base = if e < 0 {
            Self::one() / self.clone()
        } else {
            self.clone()
        };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    fn from_usize(v: usize) -> Self {
        Self::from_i64(v as i64)
    }
}

impl Scalar for Rational {
    type Acc = BigInt;
    const MODE: Mode = Mode::Exact;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn from_acc(acc: &BigInt) -> Self {
        Rational::from_integer(acc.clone())
    }

    fn split_common(values: &[Self]) -> (Vec<BigInt>, Self) {
        let lcm = values
            .iter()
            .fold(BigInt::one(), |l, v| l.lcm(v.denom()));
        let acc = values
            .iter()
            .map(|v| v.numer() * (&lcm / v.denom()))
            .collect();
        (acc, Rational::new(BigInt::one(), lcm))
    }

    fn inertia(m: &SymMatrix<Self>) -> Result<EigenSignature> {
        Ok(crate::spectral::congruence_inertia(m))
    }

    fn approx_eq(a: &Self, b: &Self) -> bool {
        a == b
    }

    fn to_json(&self) -> Value {
        json!({ "num": self.numer().to_string(), "den": self.denom().to_string() })
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Object(map) => {
                let field = |k: &str| -> Result<BigInt> {
                    map.get(k)
                        .and_then(Value::as_str)
                        .ok_or_else(|| Error::Parse(format!("exact scalar needs a string field {k:?}")))
                        .and_then(|s| {
                            BigInt::from_str(s)
                                .map_err(|e| Error::Parse(format!("bad integer {s:?}: {e}")))
                        })
                };
                let (num, den) = (field("num")?, field("den")?);
                if den.is_zero() {
                    return Err(Error::Parse("zero denominator".into()));
                }
                Ok(Rational::new(num, den))
            }
            Value::String(s) => parse_rational(s),
            Value::Number(n) if n.is_i64() => Ok(Rational::from_i64(n.as_i64().unwrap_or(0))),
            other => Err(Error::Parse(format!(
                "expected an exact scalar {{\"num\":..,\"den\":..}}, found {other}"
            ))),
        }
    }
}

impl Scalar for f64 {
    type Acc = f64;
    const MODE: Mode = Mode::Float;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn from_rational(r: &Rational) -> Self {
        <Rational as Scalar>::to_f64(r)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn from_acc(acc: &f64) -> Self {
        *acc
    }

    fn split_common(values: &[Self]) -> (Vec<f64>, Self) {
        (values.to_vec(), 1.0)
    }

    fn inertia(m: &SymMatrix<Self>) -> Result<EigenSignature> {
        crate::spectral::float_inertia(m, crate::spectral::DEFAULT_RELATIVE_TOL).map(|s| s.signature)
    }

    fn approx_eq(a: &Self, b: &Self) -> bool {
        let scale = a.abs().max(b.abs()).max(1.0);
        (a - b).abs() <= 1e-10 * scale
    }

    fn to_json(&self) -> Value {
        json!(self)
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Number(n) => n
                .as_f64()
                .ok_or_else(|| Error::Parse(format!("not representable as f64: {n}"))),
            Value::Object(_) | Value::String(_) => {
                Rational::from_json(v).map(|r| <Rational as Scalar>::to_f64(&r))
            }
            other => Err(Error::Parse(format!("expected a number, found {other}"))),
        }
    }
}

/// Parses `"num/den"` or a plain integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = |e: &dyn std::fmt::Display| Error::Parse(format!("invalid rational {s:?}: {e}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let num = BigInt::from_str(n.trim()).map_err(|e| bad(&e))?;
            let den = BigInt::from_str(d.trim()).map_err(|e| bad(&e))?;
            if den.is_zero() {
                return Err(bad(&"zero denominator"));
            }
            Ok(Rational::new(num, den))
        }
        None => BigInt::from_str(s)
            .map(Rational::from_integer)
            .map_err(|e| bad(&e)),
    }
}

/// Parses a scalar in the requested mode. Exact mode accepts only integers
/// and `num/den` strings; float mode also accepts decimal literals.
pub fn parse_scalar<T: Scalar>(s: &str) -> Result<T> {
    match T::MODE {
        Mode::Exact => parse_rational(s).map(|r| T::from_rational(&r)),
        Mode::Float => match parse_rational(s) {
            Ok(r) => Ok(T::from_rational(&r)),
            Err(_) => s
                .trim()
                .parse::<f64>()
                .map(|v| T::from_rational(&Rational::from_float(v).unwrap_or_default()))
                .map_err(|e| Error::Parse(format!("invalid number {s:?}: {e}"))),
        },
    }
}

/// Parses a comma-separated list of scalars.
pub fn parse_scalar_list<T: Scalar>(s: &str) -> Result<Vec<T>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_scalar::<T>).collect()
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::from_ratio(num, den)
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// `m! / (m - k)!`, zero when `k > m`.
pub(crate) fn falling_factorial(m: usize, k: usize) -> u64 {
    if k > m {
        return 0;
    }
    ((m - k + 1)..=m).map(|v| v as u64).product()
}
