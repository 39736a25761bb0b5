//! Single-point checks. Each takes fully specified inputs and returns a
//! verdict with its witness; campaigns sample the inputs and replay calls
//! these same functions.

use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::report::Verdict;
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::potts::{active_variables, f_all, zk_all, CoeffSeq, EvalPoint, MultiIndex, WeightedPotts};
use crate::scalar::{binomial, Accumulator, Mode, Scalar};
use crate::spectral::{float_eigenvalues, signature, EigenSignature, SymMatrix, DEFAULT_RELATIVE_TOL};

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub verdict: Verdict,
    pub witness: Value,
    pub annotations: Vec<String>,
}

impl Outcome {
    fn new(verdict: Verdict, witness: Value) -> Self {
        Outcome {
            verdict,
            witness,
            annotations: Vec::new(),
        }
    }

    fn not_applicable(reason: impl Into<String>) -> Self {
        Outcome {
            verdict: Verdict::NotApplicable,
            witness: Value::Null,
            annotations: vec![reason.into()],
        }
    }

    fn note(mut self, a: impl Into<String>) -> Self {
        self.annotations.push(a.into());
        self
    }
}

fn pass_if(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

/// `a >= b`, with a relative tolerance of `1e-10` in float mode.
fn at_least<T: Scalar>(a: &T, b: &T) -> bool {
    a >= b || (T::MODE == Mode::Float && T::approx_eq(a, b))
}

fn is_equal<T: Scalar>(a: &T, b: &T) -> bool {
    T::approx_eq(a, b)
}

fn from_u128<T: Scalar>(v: u128) -> T {
    T::from_rational(&crate::scalar::Rational::from_integer(v.into()))
}

/// Signature, or the reason it could not be decided in floating point.
fn decide_signature<T: Scalar>(m: &SymMatrix<T>) -> Result<std::result::Result<EigenSignature, Outcome>> {
    match signature(m) {
        Ok(s) => Ok(Ok(s)),
        Err(Error::IndeterminateSignature { tol, eigenvalues }) => Ok(Err(Outcome {
            verdict: Verdict::NotApplicable,
            witness: json!({ "eigenvalues": eigenvalues, "tol": tol }),
            annotations: vec!["float signature indeterminate: eigenvalue within tolerance of zero".into()],
        })),
        Err(e) => Err(e),
    }
}

/// The Hessian of `Z_M` has exactly one positive eigenvalue.
pub fn qhr_point<T: Scalar>(m: &Matroid, q: &T, w: &EvalPoint<T>) -> Result<Outcome> {
    let n = m.n();
    if n < 2 {
        return Ok(Outcome::not_applicable("ground set needs at least two elements"));
    }
    let z = WeightedPotts::homogeneous(m, q)?;
    let h = z.hessian_scaled(&MultiIndex::zero(n), w)?;
    let sig = match decide_signature(&h.acc)? {
        Ok(s) => s,
        Err(o) => return Ok(o),
    };
    let mut witness = json!({ "signature": sig.to_string() });
    let ok = sig.n_pos == 1;
    if !ok {
        witness["hessian"] = h.acc.scale(&h.factor).to_json();
    }
    let mut out = Outcome::new(pass_if(ok), witness);
    if sig.n_zero > 0 {
        out = out.note(format!("singular Hessian, signature {sig}"));
    }
    Ok(out)
}

/// The Hessian of `d^alpha Z_{M,c}` on its active variables is
/// nonsingular with exactly one positive eigenvalue.
pub fn cqhr_point<T: Scalar>(
    m: &Matroid,
    c: &CoeffSeq<T>,
    q: &T,
    alpha: &MultiIndex,
    w: &EvalPoint<T>,
) -> Result<Outcome> {
    let n = m.n();
    if !c.is_strictly_log_concave() {
        return Ok(Outcome::not_applicable("coefficients are not strictly log-concave"));
    }
    let z = WeightedPotts::new(m, c, q)?;
    let d = match z.derivative_degree(alpha) {
        None => return Ok(Outcome::not_applicable("derivative vanishes identically")),
        Some(d) if d < 2 => return Ok(Outcome::not_applicable(format!("derivative has degree {d}"))),
        Some(d) => d,
    };
    let active = active_variables(n, alpha);
    let h = z.hessian_scaled(alpha, w)?;
    let restricted = h.acc.principal(&active);
    let sig = match decide_signature(&restricted)? {
        Ok(s) => s,
        Err(o) => return Ok(o),
    };
    let expected = EigenSignature::new(1, active.len() - 1, 0);
    let ok = sig == expected;
    let mut witness = json!({
        "signature": sig.to_string(),
        "expected": expected.to_string(),
        "degree": d,
        "active": active,
    });
    if !ok {
        witness["hessian"] = h.acc.scale(&h.factor).to_json();
    }
    Ok(Outcome::new(pass_if(ok), witness))
}

/// The degree-two inequalities at a nonzero `w in R^n`: the strict
/// discriminant bound, the loop/parallel-class decomposition of `Z^2`
/// after `w_j -> q w_j` on non-loops, Cauchy-Schwarz at `q = 1`, and
/// `Z^2 < 0` whenever `Z^1 = 0`.
pub fn deg2_point<T: Scalar>(m: &Matroid, c: &CoeffSeq<T>, q: &T, w: &[T]) -> Result<Outcome> {
    let n = m.n();
    if w.len() != n {
        return Err(Error::InvalidParameters(format!("expected {n} weights, got {}", w.len())));
    }
    if w.iter().all(Zero::is_zero) {
        return Err(Error::InvalidParameters("w must be nonzero".into()));
    }
    if n < 2 {
        return Ok(Outcome::not_applicable("ground set needs at least two elements"));
    }
    let Some(t) = c.degree_two_ratio() else {
        return Ok(Outcome::not_applicable("coefficient sequence shorter than three"));
    };
    if t >= T::one() {
        return Ok(Outcome::not_applicable("c_0 c_2 / c_1^2 must be below 1"));
    }

    let zs = zk_all(m, q, w)?;
    let (z1, z2) = (zs[1].clone(), zs[2].clone());
    let nn = T::from_usize(n);
    let rhs = T::from_i64(2) * t.clone() * nn.clone() / T::from_usize(n - 1) * z2.clone();
    let lhs = z1.clone() * z1.clone();
    let strict = lhs > rhs;

    let structure = m.structure();
    let loops = m.loops();
    let substituted: Vec<T> = w
        .iter()
        .enumerate()
        .map(|(i, x)| if loops.contains(i + 1) { x.clone() } else { x.clone() * q.clone() })
        .collect();
    let zs_sub = zk_all(m, q, &substituted)?;
    let e1: T = w.iter().cloned().fold(T::zero(), |a, b| a + b);
    let e2 = |idx: &[usize]| -> T {
        let mut s1 = T::zero();
        let mut s2 = T::zero();
        for &i in idx {
            s2 = s2 + s1.clone() * w[i - 1].clone();
            s1 = s1 + w[i - 1].clone();
        }
        s2
    };
    let all: Vec<usize> = (1..=n).collect();
    let class_sum = structure
        .parallel_classes
        .iter()
        .fold(T::zero(), |acc, cls| acc + e2(cls));
    let expected_z2 = e2(&all) - (T::one() - q.clone()) * class_sum;
    let residual = (zs_sub[2].clone() - expected_z2.clone()).abs();
    let decomposition = is_equal(&zs_sub[2], &expected_z2);
    let linear_ok = is_equal(&zs_sub[1], &e1);

    let mut out_notes = Vec::new();
    let cauchy_schwarz = if q.is_one() {
        let sq = w.iter().fold(T::zero(), |a, x| a + x.clone() * x.clone());
        let ok = at_least(&(nn.clone() * sq), &(e1.clone() * e1.clone()));
        out_notes.push("q = 1: Cauchy-Schwarz checked".to_string());
        ok
    } else {
        true
    };

    let zero_branch = if z1.is_zero() {
        out_notes.push("Z^1 = 0 branch: Z^2 < 0 required".to_string());
        z2.is_negative()
    } else {
        true
    };

    let ok = strict && decomposition && linear_ok && cauchy_schwarz && zero_branch;
    let mut out = Outcome::new(
        pass_if(ok),
        json!({
            "z1": z1.to_json(),
            "z2": z2.to_json(),
            "t": t.to_json(),
            "lhs": lhs.to_json(),
            "rhs": rhs.to_json(),
            "strict": strict,
            "decomposition_residual": residual.to_json(),
            "cauchy_schwarz": cauchy_schwarz,
            "zero_branch": zero_branch,
        }),
    );
    out.annotations = out_notes;
    Ok(out)
}

/// Ultra log-concavity of `Z^0, ..., Z^n` at `w >= 0`.
pub fn ulc_point<T: Scalar>(m: &Matroid, q: &T, w: &[T]) -> Result<Outcome> {
    let n = m.n();
    if n < 2 {
        return Ok(Outcome::not_applicable("no 0 < m < n"));
    }
    let z = zk_all(m, q, w)?;
    sequence_ulc(&z, n, "m")
}

fn sequence_ulc<T: Scalar>(z: &[T], n: usize, var: &str) -> Result<Outcome> {
    let mut ok = true;
    let mut slacks = Vec::new();
    let mut notes = Vec::new();
    let mut meaningful = false;
    for k in 1..n {
        let lhs = z[k].clone() * z[k].clone() * from_u128::<T>(binomial(n, k + 1) * binomial(n, k - 1));
        let b = binomial(n, k);
        let rhs = z[k + 1].clone() * z[k - 1].clone() * from_u128::<T>(b * b);
        if rhs.is_zero() {
            notes.push(format!("vacuous at {var}={k}: right side is zero"));
        } else {
            meaningful = true;
        }
        if !at_least(&lhs, &rhs) {
            ok = false;
        } else if is_equal(&lhs, &rhs) && !rhs.is_zero() {
            notes.push(format!("equality at {var}={k}"));
        }
        slacks.push((lhs - rhs).to_json());
    }
    let verdict = match (ok, meaningful) {
        (false, _) => Verdict::Fail,
        (true, true) => Verdict::Pass,
        (true, false) => Verdict::Vacuous,
    };
    let mut out = Outcome::new(verdict, json!({ "slack": slacks }));
    out.annotations = notes;
    Ok(out)
}

/// Mason's inequality on independent-set counts, computed twice: from the
/// rank table directly and through `f^k_M(1, ..., 1)`. Equality cases are
/// compared with "every `(k+1)`-subset is independent".
pub fn mason_counts_point(m: &Matroid) -> Result<Outcome> {
    let n = m.n();
    let counts = m.independent_set_counts()?;
    let via_f = f_all::<crate::scalar::Rational>(m, &vec![crate::scalar::Rational::one(); n])?;
    let paths_agree = counts
        .iter()
        .zip(&via_f)
        .all(|(&c, f)| *f == crate::scalar::Rational::from_integer(c.into()));

    let mut ok = paths_agree;
    let mut equal_at = Vec::new();
    let mut mismatches = Vec::new();
    let mut notes = Vec::new();
    let mut meaningful = false;
    for k in 1..n {
        let i = |j: usize| counts[j] as u128;
        let lhs = i(k) * i(k) * (k * (n - k)) as u128;
        let rhs = ((k + 1) * (n - k + 1)) as u128 * i(k - 1) * i(k + 1);
        if rhs == 0 {
            notes.push(format!("vacuous at k={k}: right side is zero"));
            continue;
        }
        meaningful = true;
        if lhs < rhs {
            ok = false;
        }
        let equality = lhs == rhs;
        let criterion = i(k + 1) == binomial(n, k + 1);
        if equality {
            equal_at.push(k);
            notes.push(format!("equality at k={k}"));
        }
        if equality != criterion {
            mismatches.push(k);
            notes.push(format!(
                "equality criterion mismatch at k={k}: equality {equality}, all {}-subsets independent {criterion}",
                k + 1
            ));
        }
    }
    if !paths_agree {
        notes.push("independent-set counts disagree between enumeration paths".into());
    }
    let verdict = match (ok, meaningful) {
        (false, _) => Verdict::Fail,
        (true, true) => Verdict::Pass,
        (true, false) => Verdict::Vacuous,
    };
    let mut out = Outcome::new(
        verdict,
        json!({
            "counts": counts,
            "equality_at": equal_at,
            "criterion_mismatches": mismatches,
            "paths_agree": paths_agree,
        }),
    );
    out.annotations = notes;
    Ok(out)
}

/// Ultra log-concavity of `f^0_M(w), ..., f^n_M(w)` at `w >= 0`.
pub fn mason_point<T: Scalar>(m: &Matroid, w: &[T]) -> Result<Outcome> {
    let n = m.n();
    if n < 2 {
        return Ok(Outcome::not_applicable("no 0 < m < n"));
    }
    let f = f_all(m, w)?;
    sequence_ulc(&f, n, "m")
}

/// `C(l,m)^2 / (C(l,m+1) C(l,m-1)) >= C(n,m)^2 / (C(n,m+1) C(n,m-1))`,
/// cross-multiplied. Requires `1 <= m < l <= n`.
pub fn binomial_chain_holds(l: usize, n: usize, m: usize) -> bool {
    let lhs = binomial(l, m) * binomial(l, m) * binomial(n, m + 1) * binomial(n, m - 1);
    let rhs = binomial(n, m) * binomial(n, m) * binomial(l, m + 1) * binomial(l, m - 1);
    lhs >= rhs
}

/// The inequality chain through the simplification at `w >= 0`.
pub fn simplification_point<T: Scalar>(m: &Matroid, w: &[T]) -> Result<Outcome> {
    let n = m.n();
    let simple = m.simplify();
    if simple.degenerate {
        return Ok(Outcome::not_applicable("no rank-one flats"));
    }
    let structure = m.structure();
    let l = structure.rank_one_flats;
    let f = f_all(m, w)?;
    let merged: Vec<T> = structure
        .parallel_classes
        .iter()
        .map(|cls| cls.iter().fold(T::zero(), |a, &i| a + w[i - 1].clone()))
        .collect();
    let g = f_all(&simple.matroid, &merged)?;
    let through_simple = (0..=n).all(|k| is_equal(&f[k], g.get(k).unwrap_or(&T::zero())));

    let mut ok = through_simple;
    let mut checked = Vec::new();
    let mut notes = Vec::new();
    for k in 1..l {
        if !f[k + 1].is_positive() {
            continue;
        }
        checked.push(k);
        let lhs = f[k].clone() * f[k].clone() * from_u128::<T>(binomial(l, k + 1) * binomial(l, k - 1));
        let b = binomial(l, k);
        let rhs = f[k + 1].clone() * f[k - 1].clone() * from_u128::<T>(b * b);
        if !at_least(&lhs, &rhs) {
            ok = false;
        } else if is_equal(&lhs, &rhs) {
            notes.push(format!("equality at m={k} against the simplification bound"));
        }
        if !binomial_chain_holds(l, n, k) {
            ok = false;
        }
    }
    if !through_simple {
        notes.push("f^m of M and of its simplification disagree".into());
    }
    let verdict = if !ok {
        Verdict::Fail
    } else if checked.is_empty() {
        notes.push(format!("no m with 0 < m < {l} and f^(m+1) > 0"));
        Verdict::Vacuous
    } else {
        Verdict::Pass
    };
    let mut out = Outcome::new(
        verdict,
        json!({ "rank_one_flats": l, "checked_m": checked, "through_simplification": through_simple }),
    );
    out.annotations = notes;
    Ok(out)
}

/// `Z H - grad Z grad Z^T`, the numerator of the Hessian of `log Z_M`, up
/// to a positive factor, together with `Z` at the same scale and the
/// integer point `W` proportional to `w`.
pub fn log_hessian_numerator<T: Scalar>(
    m: &Matroid,
    q: &T,
    w: &EvalPoint<T>,
) -> Result<(SymMatrix<T>, T, Vec<T>)> {
    let n = m.n();
    let z = WeightedPotts::homogeneous(m, q)?;
    let (v, g, h, _) = z.value_gradient_hessian_scaled(w)?;
    let value = T::from_acc(&v);
    if !value.is_positive() {
        return Err(Error::ImpossibleState(format!(
            "Z_M(w) = {value:?} is not positive at a positive point"
        )));
    }
    let dim = n + 1;
    let numerator = SymMatrix::from_fn(dim, |i, j| {
        let mut e = v.mul_ref(&h[i * dim + j]);
        e.sub_ref(&g[i].mul_ref(&g[j]));
        T::from_acc(&e)
    });
    let (ws, _) = T::split_common(w.as_slice());
    Ok((numerator, value, ws.iter().map(T::from_acc).collect()))
}

/// The Hessian of `log Z_M` is negative semidefinite at `w > 0`.
pub fn logconcavity_point<T: Scalar>(m: &Matroid, q: &T, w: &EvalPoint<T>) -> Result<Outcome> {
    let n = m.n();
    if !w.is_positive() {
        return Err(Error::InvalidParameters("w must be strictly positive".into()));
    }
    let (num, value, ws) = log_hessian_numerator(m, q, w)?;
    let (n_pos, sig_text) = match T::MODE {
        Mode::Exact => {
            let s = signature(&num)?;
            (s.n_pos, s.to_string())
        }
        Mode::Float => {
            let f = num.to_f64();
            let tol = DEFAULT_RELATIVE_TOL * f.max_abs();
            let ev = float_eigenvalues(&f);
            (ev.iter().filter(|&&e| e > tol).count(), format!("{ev:?}"))
        }
    };
    let along_w = num.bilinear(&ws, &ws);
    let expected = -(T::from_usize(n) * value.clone() * value);
    let scaling_ok = at_least(&T::zero(), &along_w) && is_equal(&along_w, &expected);
    let ok = n_pos == 0 && scaling_ok;
    let mut out = Outcome::new(
        pass_if(ok),
        json!({ "signature": sig_text, "along_w": along_w.to_json() }),
    );
    out = out.note("along w the numerator form equals -n Z^2");
    if !ok {
        out.witness["numerator"] = num.to_json();
    }
    Ok(out)
}

/// Raw second difference `g(h) - 2 g(0) + g(-h)` of `g(t) = log Z_M(w + t e_i)`.
pub fn log_slice_second_difference(m: &Matroid, q: f64, w: &[f64], i: usize, h: f64) -> Result<f64> {
    let z = WeightedPotts::<f64>::homogeneous(m, &q)?;
    let alpha = MultiIndex::zero(m.n());
    let at = |t: f64| -> Result<f64> {
        let mut p = w.to_vec();
        p[i] += t;
        Ok(z.value(&alpha, &EvalPoint::new(p))?.ln())
    };
    Ok(at(h)? - 2.0 * at(0.0)? + at(-h)?)
}
