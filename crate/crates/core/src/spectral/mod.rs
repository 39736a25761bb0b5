//! Symmetric matrices, their inertia, and the one-positive-eigenvalue
//! criteria built on top of it.

mod identities;
mod inertia;
mod linalg;
mod lorentz;

pub use identities::{euler_hessian_residual, kernel_identity_check, KernelReport, KernelStatus};
pub use inertia::{congruence_inertia, float_eigenvalues, float_inertia, FloatSignature, DEFAULT_RELATIVE_TOL};
pub use linalg::{nullspace, rank};
pub use lorentz::{
    hr_discriminant, lemma1_cross_check, one_positive, HrDiscriminant, Lemma1Report, PairWitness,
    LEMMA1_MAX_RETRIES,
};

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Inertia counts of a symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
pub struct EigenSignature {
    pub n_pos: usize,
    pub n_neg: usize,
    pub n_zero: usize,
}

impl EigenSignature {
    pub fn new(n_pos: usize, n_neg: usize, n_zero: usize) -> Self {
        EigenSignature { n_pos, n_neg, n_zero }
    }

    pub fn dim(&self) -> usize {
        self.n_pos + self.n_neg + self.n_zero
    }

    pub fn is_nonsingular(&self) -> bool {
        self.n_zero == 0
    }
}

impl std::fmt::Display for EigenSignature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.n_pos, self.n_neg, self.n_zero)
    }
}

/// Dense symmetric matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix<T> {
    dim: usize,
    entries: Vec<T>,
}

impl<T: Scalar> SymMatrix<T> {
    /// Fails unless `entries` has `dim * dim` elements and is exactly
    /// symmetric.
    pub fn new(dim: usize, entries: Vec<T>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::InvalidParameters(format!(
                "{dim}x{dim} matrix needs {} entries, got {}",
                dim * dim,
                entries.len()
            )));
        }
        for i in 0..dim {
            for j in i + 1..dim {
                if entries[i * dim + j] != entries[j * dim + i] {
                    return Err(Error::InvalidParameters(format!(
                        "matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(SymMatrix { dim, entries })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidParameters("matrix rows must all have length dim".into()));
        }
        Self::new(dim, rows.into_iter().flatten().collect())
    }

    /// Builds a matrix from its upper triangle.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = vec![T::zero(); dim * dim];
        for i in 0..dim {
            for j in i..dim {
                let v = f(i, j);
                entries[j * dim + i] = v.clone();
                entries[i * dim + j] = v;
            }
        }
        SymMatrix { dim, entries }
    }

    pub(crate) fn from_entries_unchecked(dim: usize, entries: Vec<T>) -> Self {
        debug_assert_eq!(entries.len(), dim * dim);
        SymMatrix { dim, entries }
    }

    pub fn zeros(dim: usize) -> Self {
        SymMatrix {
            dim,
            entries: vec![T::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn diagonal(values: &[T]) -> Self {
        Self::from_fn(values.len(), |i, j| {
            if i == j {
                values[i].clone()
            } else {
                T::zero()
            }
        })
    }

    /// `J_d`: zero diagonal, ones elsewhere.
    pub fn all_ones_off_diagonal(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { T::zero() } else { T::one() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.entries.chunks(self.dim.max(1)).map(<[T]>::to_vec).take(self.dim).collect()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> SymMatrix<U> {
        SymMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn to_f64(&self) -> SymMatrix<f64> {
        self.map(T::to_f64)
    }

    /// The principal submatrix on `indices`.
    pub fn principal(&self, indices: &[usize]) -> Self {
        Self::from_fn(indices.len(), |a, b| self.get(indices[a], indices[b]).clone())
    }

    pub fn scale(&self, factor: &T) -> Self {
        self.map(|v| v.clone() * factor.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        SymMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-T::one()))
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        (0..self.dim)
            .map(|i| {
                (0..self.dim).fold(T::zero(), |acc, j| acc + self.get(i, j).clone() * v[j].clone())
            })
            .collect()
    }

    /// `u^T A v`.
    pub fn bilinear(&self, u: &[T], v: &[T]) -> T {
        let av = self.mul_vec(v);
        u.iter().zip(av).fold(T::zero(), |acc, (a, b)| acc + a.clone() * b)
    }

    pub fn max_abs(&self) -> T {
        self.entries
            .iter()
            .map(|v| v.abs())
            .fold(T::zero(), |m, v| if v > m { v } else { m })
    }

    pub fn signature(&self) -> Result<EigenSignature> {
        signature(self)
    }

    /// `{"dim":d,"entries":[[...],...]}` with scalars in their mode's JSON form.
    pub fn to_json(&self) -> Value {
        json!({
            "dim": self.dim,
            "entries": self.rows().iter().map(|r| r.iter().map(T::to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let dim = value
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("matrix needs an integer \"dim\"".into()))? as usize;
        let rows = value
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("matrix needs an \"entries\" array".into()))?;
        let rows = rows
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::Parse("matrix rows must be arrays".into()))?
                    .iter()
                    .map(T::from_json)
                    .collect::<Result<Vec<T>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if rows.len() != dim {
            return Err(Error::Parse(format!("expected {dim} rows, found {}", rows.len())));
        }
        Self::from_rows(rows)
    }
}

/// Inertia `(n_pos, n_neg, n_zero)` of `a`, exact for rationals.
pub fn signature<T: Scalar>(a: &SymMatrix<T>) -> Result<EigenSignature> {
    T::inertia(a)
}
