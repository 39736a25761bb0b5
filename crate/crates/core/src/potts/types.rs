use num_bigint::BigInt;
use num_traits::{One, Pow, Signed};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// A positive coefficient sequence `c_0, ..., c_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffSeq<T> {
    values: Vec<T>,
    strictly_log_concave: bool,
}

impl<T: Scalar> CoeffSeq<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidParameters("coefficient sequence is empty".into()));
        }
        if let Some(i) = values.iter().position(|c| !c.is_positive()) {
            return Err(Error::InvalidParameters(format!(
                "coefficient c_{i} = {:?} is not positive",
                values[i]
            )));
        }
        let strictly_log_concave = values
            .windows(3)
            .all(|w| w[1].clone() * w[1].clone() > w[0].clone() * w[2].clone());
        Ok(CoeffSeq {
            values,
            strictly_log_concave,
        })
    }

    /// The constant sequence `1` of length `n + 1`.
    pub fn ones(n: usize) -> Self {
        CoeffSeq {
            values: vec![T::one(); n + 1],
            strictly_log_concave: n < 2,
        }
    }

    /// `c_k = r^{k(n-k)}`, cleared to integers when `r = a/b`:
    /// `c_k = a^{k(n-k)} b^{E - k(n-k)}` with `E` the largest exponent.
    /// Each interior ratio `c_m^2 / (c_{m-1} c_{m+1})` equals `r^2`, so the
    /// sequence is strictly log-concave for `r > 1`.
    pub fn geometric_log_concave(n: usize, r: &Rational) -> Result<Self> {
        if *r <= Rational::one() {
            return Err(Error::InvalidParameters(format!(
                "ratio {r} must exceed 1 for strict log-concavity"
            )));
        }
        let exps: Vec<u32> = (0..=n).map(|k| (k * (n - k)) as u32).collect();
        let top = exps.iter().copied().max().unwrap_or(0);
        let values = exps
            .iter()
            .map(|&e| {
                let v: BigInt = Pow::pow(r.numer(), e) * Pow::pow(r.denom(), top - e);
                T::from_rational(&Rational::from_integer(v))
            })
            .collect();
        Self::new(values)
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `c_m^2 > c_{m-1} c_{m+1}` for every interior `m`.
    pub fn is_strictly_log_concave(&self) -> bool {
        self.strictly_log_concave
    }

    /// `t = c_0 c_2 / c_1^2`, the degree-two discriminant parameter.
    pub fn degree_two_ratio(&self) -> Option<T> {
        (self.values.len() >= 3).then(|| {
            self.values[0].clone() * self.values[2].clone()
                / (self.values[1].clone() * self.values[1].clone())
        })
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.values.iter().map(T::to_json).collect())
    }
}

/// A multi-index `alpha` selecting `d_0^{a_0} d_1^{a_1} ... d_n^{a_n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(alpha: Vec<usize>) -> Self {
        MultiIndex(alpha)
    }

    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n + 1])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        Self::zero(n).plus(i)
    }

    /// `alpha + e_i`.
    pub fn plus(&self, i: usize) -> Self {
        let mut a = self.0.clone();
        a[i] += 1;
        MultiIndex(a)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn w0_order(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    /// Bitmask of the `i >= 1` with `alpha_i >= 1` (bit `i - 1`).
    pub(crate) fn support_mask(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, &a)| a > 0)
            .fold(0, |acc, (i, _)| acc | 1 << (i - 1))
    }

    /// Some `alpha_i >= 2` with `i >= 1`.
    pub(crate) fn repeats_multiaffine_variable(&self) -> bool {
        self.0.iter().skip(1).any(|&a| a >= 2)
    }
}

impl std::fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A point `(w_0, w_1, ..., w_n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalPoint<T>(Vec<T>);

impl<T: Scalar> EvalPoint<T> {
    pub fn new(w: Vec<T>) -> Self {
        EvalPoint(w)
    }

    pub fn ones(n: usize) -> Self {
        EvalPoint(vec![T::one(); n + 1])
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn w0(&self) -> &T {
        &self.0[0]
    }

    /// `(w_1, ..., w_n)`.
    pub fn rest(&self) -> &[T] {
        &self.0[1..]
    }

    /// Per-coordinate positivity.
    pub fn positivity(&self) -> Vec<bool> {
        self.0.iter().map(Signed::is_positive).collect()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(Signed::is_positive)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.0.iter().map(T::to_json).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    #[test]
    fn log_concavity_flag() {
        let c = CoeffSeq::new(vec![rational(3, 1), rational(2, 1), rational(1, 1)]).unwrap();
        assert!(c.is_strictly_log_concave());
        let c = CoeffSeq::new(vec![rational(4, 1), rational(2, 1), rational(1, 1)]).unwrap();
        assert!(!c.is_strictly_log_concave());
        assert!(!CoeffSeq::<Rational>::ones(2).is_strictly_log_concave());
        assert!(CoeffSeq::new(vec![rational(1, 1), rational(0, 1)]).is_err());
    }

    #[test]
    fn geometric_family_is_integral_and_strict() {
        for n in 0..8 {
            for r in [rational(2, 1), rational(3, 2), rational(17, 16)] {
                let c = CoeffSeq::<Rational>::geometric_log_concave(n, &r).unwrap();
                assert!(c.is_strictly_log_concave(), "n={n} r={r}");
                assert!(c.values().iter().all(|v| v.is_integer()));
                for m in 1..n {
                    let v = c.values();
                    let ratio = v[m].clone() * v[m].clone() / (v[m - 1].clone() * v[m + 1].clone());
                    assert_eq!(ratio, r.clone() * r.clone());
                }
            }
        }
        assert!(CoeffSeq::<Rational>::geometric_log_concave(3, &rational(1, 1)).is_err());
    }

    #[test]
    fn multi_index_support() {
        let a = MultiIndex::new(vec![2, 1, 0, 1]);
        assert_eq!(a.degree(), 4);
        assert_eq!(a.support_mask(), 0b101);
        assert!(!a.repeats_multiaffine_variable());
        assert!(a.plus(1).repeats_multiaffine_variable());
        assert_eq!(a.to_string(), "(2,1,0,1)");
    }
}
