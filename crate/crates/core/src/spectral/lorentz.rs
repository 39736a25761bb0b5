use num_traits::Signed;
use rand::Rng;
use serde::Serialize;

use super::inertia::top_eigenvector;
use super::{signature, EigenSignature, SymMatrix};
use crate::error::{Error, Result};
use crate::rng::rng_for;
use crate::scalar::{Rational, Scalar};

/// Bound on how many random vectors are tried when looking for `u^T A u > 0`.
pub const LEMMA1_MAX_RETRIES: usize = 1000;

const COORD_RANGE: i64 = 9;

/// Does `a` have exactly one positive eigenvalue?
pub fn one_positive<T: Scalar>(a: &SymMatrix<T>) -> Result<bool> {
    Ok(signature(a)?.n_pos == 1)
}

#[derive(Debug, Clone, PartialEq)]
pub struct HrDiscriminant<T> {
    /// `(u^T A v)^2 - (u^T A u)(v^T A v)`.
    pub value: T,
    /// `u^T A u`.
    pub u_form: T,
    pub u_form_positive: bool,
}

pub fn hr_discriminant<T: Scalar>(a: &SymMatrix<T>, u: &[T], v: &[T]) -> Result<HrDiscriminant<T>> {
    if u.len() != a.dim() || v.len() != a.dim() {
        return Err(Error::InvalidParameters(format!(
            "vectors must have length {}, got {} and {}",
            a.dim(),
            u.len(),
            v.len()
        )));
    }
    let uv = a.bilinear(u, v);
    let uu = a.bilinear(u, u);
    let vv = a.bilinear(v, v);
    Ok(HrDiscriminant {
        value: uv.clone() * uv - uu.clone() * vv,
        u_form_positive: uu.is_positive(),
        u_form: uu,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairWitness {
    pub u: Vec<i64>,
    pub v: Vec<i64>,
    pub discriminant: String,
}

/// Verdicts of the three equivalent one-positive-eigenvalue statements.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Lemma1Report {
    pub signature: EigenSignature,
    /// Exactly one positive eigenvalue.
    pub statement1: bool,
    /// No sampled pair with `u^T A u > 0` had a negative discriminant.
    pub statement2: bool,
    /// For the witness `u`, the discriminant is nonnegative for every `v`,
    /// decided exactly as negative semidefiniteness of
    /// `(u^T A u) A - (A u)(A u)^T`.
    pub statement3: bool,
    pub agree: bool,
    pub trials: usize,
    pub violations: usize,
    pub counterexample: Option<PairWitness>,
    pub witness_u: Vec<i64>,
    /// Sampled `v` for which the witness inequality failed.
    pub witness_violations: usize,
}

fn to_rational(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from_i64(x)).collect()
}

fn random_vector(rng: &mut impl Rng, dim: usize) -> Vec<i64> {
    (0..dim).map(|_| rng.gen_range(-COORD_RANGE..=COORD_RANGE)).collect()
}

fn is_positive_direction(a: &SymMatrix<Rational>, u: &[i64]) -> bool {
    let u = to_rational(u);
    a.bilinear(&u, &u).is_positive()
}

/// Random small vectors first; when the positive cone is too thin for
/// those, perturbations of the rounded top eigenvector. Positivity is
/// always decided exactly.
fn positive_direction(a: &SymMatrix<Rational>, rng: &mut impl Rng) -> Option<Vec<i64>> {
    let dim = a.dim();
    if let Some(u) = (0..LEMMA1_MAX_RETRIES / 10)
        .map(|_| random_vector(rng, dim))
        .find(|u| is_positive_direction(a, u))
    {
        return Some(u);
    }
    let top = top_eigenvector(&a.to_f64());
    let base: Vec<i64> = top.iter().map(|x| (x * 1000.0).round() as i64).collect();
    (0..LEMMA1_MAX_RETRIES)
        .map(|_| {
            let r = random_vector(rng, dim);
            base.iter().zip(r).map(|(b, r)| b + r).collect::<Vec<_>>()
        })
        .find(|u| is_positive_direction(a, u))
        .or_else(|| is_positive_direction(a, &base).then_some(base))
}

/// Deterministic candidates first (basis vectors and their sums and
/// differences), then seeded random vectors.
fn find_witness(a: &SymMatrix<Rational>, seed: u64) -> Option<Vec<i64>> {
    let dim = a.dim();
    let unit = |i: usize| (0..dim).map(|k| (k == i) as i64).collect::<Vec<_>>();
    let mut candidates: Vec<Vec<i64>> = (0..dim).map(unit).collect();
    for i in 0..dim {
        for j in i + 1..dim {
            for sign in [1, -1] {
                let mut u = unit(i);
                u[j] = sign;
                candidates.push(u);
            }
        }
    }
    candidates
        .into_iter()
        .find(|u| a.bilinear(&to_rational(u), &to_rational(u)).is_positive())
        .or_else(|| positive_direction(a, &mut rng_for(seed, &[u64::MAX])))
}

/// Evaluates all three one-positive-eigenvalue statements on `a` and
/// reports whether they agree. Statement 2 is sampled over `trials` random
/// integer pairs; statement 3 is decided exactly for one witness `u`.
pub fn lemma1_cross_check(a: &SymMatrix<Rational>, trials: usize, seed: u64) -> Result<Lemma1Report> {
    let sig = signature(a)?;
    if sig.n_pos == 0 {
        return Err(Error::NotApplicable(
            "the matrix has no positive eigenvalue".into(),
        ));
    }
    let dim = a.dim();

    let mut violations = 0;
    let mut counterexample = None;
    for t in 0..trials {
        let mut rng = rng_for(seed, &[t as u64]);
        let u = positive_direction(a, &mut rng).ok_or_else(|| {
            Error::SamplingFailure(format!(
                "no u with u^T A u > 0 after {LEMMA1_MAX_RETRIES} draws"
            ))
        })?;
        let v = random_vector(&mut rng, dim);
        let d = hr_discriminant(a, &to_rational(&u), &to_rational(&v))?;
        if d.value.is_negative() {
            violations += 1;
            counterexample.get_or_insert(PairWitness {
                u,
                v,
                discriminant: d.value.to_string(),
            });
        }
    }

    let witness = find_witness(a, seed).ok_or_else(|| {
        Error::SamplingFailure("no witness u with u^T A u > 0 found".into())
    })?;
    let wu = to_rational(&witness);
    let au = a.mul_vec(&wu);
    let form = a.bilinear(&wu, &wu);
    let b = SymMatrix::from_fn(dim, |i, j| {
        form.clone() * a.get(i, j).clone() - au[i].clone() * au[j].clone()
    });
    let statement3 = signature(&b)?.n_pos == 0;

    let mut witness_violations = 0;
    for t in 0..trials {
        let v = random_vector(&mut rng_for(seed, &[t as u64, 1]), dim);
        if hr_discriminant(a, &wu, &to_rational(&v))?.value.is_negative() {
            witness_violations += 1;
        }
    }

    let statement1 = sig.n_pos == 1;
    let statement2 = violations == 0;
    Ok(Lemma1Report {
        signature: sig,
        statement1,
        statement2,
        statement3,
        agree: statement1 == statement2 && statement2 == statement3,
        trials,
        violations,
        counterexample,
        witness_u: witness,
        witness_violations,
    })
}
