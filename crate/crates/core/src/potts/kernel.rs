use num_traits::{One, Zero};

use super::types::{CoeffSeq, EvalPoint, MultiIndex};
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::scalar::{falling_factorial, Accumulator, Scalar};
use crate::spectral::SymMatrix;

/// A value computed up to a known positive factor: the true value is
/// `acc * factor`. Signs, inertia and inequalities between quantities with
/// the same factor can be decided on `acc` alone.
#[derive(Debug, Clone, PartialEq)]
pub struct Scaled<T, V> {
    pub acc: V,
    pub factor: T,
}

/// `Z_{M,c}` at a fixed `q`, prepared for repeated evaluation.
///
/// Subset coefficients `c_{|A|} q^{-rk(A)}` are stored per (size, rank) as
/// `acc * scale` with a common positive `scale`. The table carries the
/// factor `q^{rank(M) - rk(A)}` and `q^{-rank(M)}` is folded into `scale`, so
/// the float path never sees `q^{-rk}` blow up for small `q`.
#[derive(Debug, Clone)]
pub struct WeightedPotts<'m, T: Scalar> {
    matroid: &'m Matroid,
    table: Vec<T::Acc>,
    ranks: usize,
    scale: T,
}

/// Subset products `P[U] = prod_{i in U} W_i` and powers of `W_0` for a
/// point with cleared denominators.
struct Prepared<A> {
    w0_pows: Vec<A>,
    products: Vec<A>,
}

/// Accumulated derivative data for one multi-index.
struct PassOutput<A> {
    value: A,
    gradient: Vec<A>,
    hessian: Vec<A>,
}

#[derive(Clone, Copy)]
struct Want {
    value: bool,
    gradient: bool,
    hessian: bool,
}

pub(crate) fn subset_products<A: Accumulator>(weights: &[A]) -> Vec<A> {
    let n = weights.len();
    let mut products = vec![A::one(); 1 << n];
    for mask in 1..1usize << n {
        let low = mask.trailing_zeros() as usize;
        products[mask] = products[mask & (mask - 1)].mul_ref(&weights[low]);
    }
    products
}

impl<'m, T: Scalar> WeightedPotts<'m, T> {
    pub fn new(matroid: &'m Matroid, c: &CoeffSeq<T>, q: &T) -> Result<Self> {
        let n = matroid.n();
        if !q.is_positive() {
            return Err(Error::InvalidParameters(format!("q must be positive, got {q:?}")));
        }
        if c.len() != n + 1 {
            return Err(Error::InvalidParameters(format!(
                "coefficient sequence needs {} entries, got {}",
                n + 1,
                c.len()
            )));
        }
        let full = matroid.full_rank();
        let ranks = full + 1;
        let mut values = Vec::with_capacity((n + 1) * ranks);
        for ck in c.values() {
            for r in 0..ranks {
                values.push(ck.clone() * q.powi((full - r) as i32));
            }
        }
        let (table, s) = T::split_common(&values);
        Ok(WeightedPotts {
            matroid,
            table,
            ranks,
            scale: s * q.powi(-(full as i32)),
        })
    }

    /// The homogeneous `Z_M` (all coefficients one).
    pub fn homogeneous(matroid: &'m Matroid, q: &T) -> Result<Self> {
        Self::new(matroid, &CoeffSeq::ones(matroid.n()), q)
    }

    pub fn matroid(&self) -> &Matroid {
        self.matroid
    }

    fn n(&self) -> usize {
        self.matroid.n()
    }

    fn check_point(&self, w: &EvalPoint<T>) -> Result<()> {
        if w.len() != self.n() + 1 {
            return Err(Error::InvalidParameters(format!(
                "evaluation point needs {} coordinates, got {}",
                self.n() + 1,
                w.len()
            )));
        }
        Ok(())
    }

    fn check_alpha(&self, alpha: &MultiIndex) -> Result<()> {
        if alpha.len() != self.n() + 1 {
            return Err(Error::InvalidParameters(format!(
                "multi-index needs {} entries, got {}",
                self.n() + 1,
                alpha.len()
            )));
        }
        Ok(())
    }

    fn prepare(&self, w: &EvalPoint<T>) -> (Prepared<T::Acc>, T) {
        let (weights, sw) = T::split_common(w.as_slice());
        let n = self.n();
        let mut w0_pows = Vec::with_capacity(n + 1);
        w0_pows.push(T::Acc::one());
        for e in 1..=n {
            let next = w0_pows[e - 1].mul_ref(&weights[0]);
            w0_pows.push(next);
        }
        let products = subset_products(&weights[1..]);
        (Prepared { w0_pows, products }, sw)
    }

    /// Degree of `d^alpha Z_{M,c}`, or `None` when it vanishes identically.
    pub fn derivative_degree(&self, alpha: &MultiIndex) -> Option<usize> {
        if alpha.repeats_multiaffine_variable() || alpha.degree() > self.n() {
            None
        } else {
            Some(self.n() - alpha.degree())
        }
    }

    /// One walk over the supersets of the multi-index support, accumulating
    /// whichever of value, gradient and Hessian of `d^alpha Z_{M,c}` are
    /// requested.
    fn pass(&self, alpha: &MultiIndex, pt: &Prepared<T::Acc>, want: Want) -> PassOutput<T::Acc> {
        let n = self.n();
        let dim = n + 1;
        let zero = T::Acc::zero;
        let mut out = PassOutput {
            value: zero(),
            gradient: if want.gradient { vec![zero(); dim] } else { Vec::new() },
            hessian: if want.hessian { vec![zero(); dim * dim] } else { Vec::new() },
        };
        if self.derivative_degree(alpha).is_none() {
            return out;
        }
        let a0 = alpha.w0_order();
        let support = alpha.support_mask();
        let free = self.matroid.ground().mask() & !support;
        let base_size = support.count_ones() as usize;

        // bases[o][size * ranks + rank] = kappa * ff(j, a0 + o) * W0^(j - a0 - o),
        // j = n - size, for o extra w_0 derivatives.
        let cells = (n + 1) * self.ranks;
        let mut bases: [Vec<Option<T::Acc>>; 3] = [vec![None; cells], vec![None; cells], vec![None; cells]];
        for size in base_size..=n {
            let j = n - size;
            for o in 0..3 {
                if j < a0 + o {
                    continue;
                }
                let ff = T::Acc::from_u64(falling_factorial(j, a0 + o));
                let w0 = ff.mul_ref(&pt.w0_pows[j - a0 - o]);
                for r in 0..self.ranks.min(size + 1) {
                    let idx = size * self.ranks + r;
                    bases[o][idx] = Some(self.table[idx].mul_ref(&w0));
                }
            }
        }

        let mut members = Vec::with_capacity(n);
        for sub in crate::matroid::submasks(free) {
            let a = support | sub;
            let size = a.count_ones() as usize;
            let idx = size * self.ranks + self.matroid.rank_mask(a);
            let p = &pt.products;
            let s = sub as usize;
            if want.value {
                if let Some(b) = &bases[0][idx] {
                    out.value.add_ref(&b.mul_ref(&p[s]));
                }
            }
            if !(want.gradient || want.hessian) {
                continue;
            }
            members.clear();
            members.extend((0..n).filter(|&i| sub >> i & 1 == 1));
            if want.gradient {
                if let Some(b) = &bases[1][idx] {
                    out.gradient[0].add_ref(&b.mul_ref(&p[s]));
                }
                if let Some(b) = &bases[0][idx] {
                    for &i in &members {
                        out.gradient[i + 1].add_ref(&b.mul_ref(&p[s & !(1 << i)]));
                    }
                }
            }
            if want.hessian {
                if let Some(b) = &bases[2][idx] {
                    out.hessian[0].add_ref(&b.mul_ref(&p[s]));
                }
                if let Some(b) = &bases[1][idx] {
                    for &i in &members {
                        out.hessian[i + 1].add_ref(&b.mul_ref(&p[s & !(1 << i)]));
                    }
                }
                if let Some(b) = &bases[0][idx] {
                    for (x, &i) in members.iter().enumerate() {
                        for &k in &members[x + 1..] {
                            let t = b.mul_ref(&p[s & !(1 << i) & !(1 << k)]);
                            out.hessian[(i + 1) * dim + k + 1].add_ref(&t);
                        }
                    }
                }
            }
        }
        if want.hessian {
            for i in 0..dim {
                for k in i + 1..dim {
                    let v = out.hessian[i * dim + k].clone();
                    out.hessian[k * dim + i] = v;
                }
            }
        }
        out
    }

    fn factor(&self, sw: &T, degree: isize) -> T {
        self.scale.clone() * sw.powi(degree as i32)
    }

    fn degree_or_zero(&self, alpha: &MultiIndex) -> isize {
        self.derivative_degree(alpha).map_or(0, |d| d as isize)
    }

    fn run(&self, alpha: &MultiIndex, w: &EvalPoint<T>, want: Want) -> Result<(PassOutput<T::Acc>, T)> {
        self.check_alpha(alpha)?;
        self.check_point(w)?;
        let (pt, sw) = self.prepare(w);
        Ok((self.pass(alpha, &pt, want), sw))
    }

    /// `d^alpha Z_{M,c}(w)`.
    pub fn value(&self, alpha: &MultiIndex, w: &EvalPoint<T>) -> Result<T> {
        let s = self.value_scaled(alpha, w)?;
        Ok(T::from_acc(&s.acc) * s.factor)
    }

    pub fn value_scaled(&self, alpha: &MultiIndex, w: &EvalPoint<T>) -> Result<Scaled<T, T::Acc>> {
        let want = Want { value: true, gradient: false, hessian: false };
        let (out, sw) = self.run(alpha, w, want)?;
        Ok(Scaled {
            acc: out.value,
            factor: self.factor(&sw, self.degree_or_zero(alpha)),
        })
    }

    /// Gradient of `d^alpha Z_{M,c}` at `w`.
    pub fn gradient(&self, alpha: &MultiIndex, w: &EvalPoint<T>) -> Result<Vec<T>> {
        let want = Want { value: false, gradient: true, hessian: false };
        let (out, sw) = self.run(alpha, w, want)?;
        let f = self.factor(&sw, self.degree_or_zero(alpha) - 1);
        Ok(out.gradient.iter().map(|g| T::from_acc(g) * f.clone()).collect())
    }

    /// Hessian of `d^alpha Z_{M,c}` at `w`, indices `0..=n`.
    pub fn hessian(&self, alpha: &MultiIndex, w: &EvalPoint<T>) -> Result<SymMatrix<T>> {
        let s = self.hessian_scaled(alpha, w)?;
        Ok(s.acc.scale(&s.factor))
    }

    /// The Hessian up to a positive factor. Same inertia and kernel as
    /// [`hessian`](Self::hessian), without normalizing every entry.
    pub fn hessian_scaled(&self, alpha: &MultiIndex, w: &EvalPoint<T>) -> Result<Scaled<T, SymMatrix<T>>> {
        let want = Want { value: false, gradient: false, hessian: true };
        let (out, sw) = self.run(alpha, w, want)?;
        let dim = self.n() + 1;
        Ok(Scaled {
            acc: SymMatrix::from_entries_unchecked(dim, out.hessian.iter().map(T::from_acc).collect()),
            factor: self.factor(&sw, self.degree_or_zero(alpha) - 2),
        })
    }

    /// Value, gradient and Hessian of `Z_{M,c}` itself from one pass. The
    /// three factors are `f * s^n`, `f * s^(n-1)`, `f * s^(n-2)` for a common
    /// `f` and point scale `s`; the returned `point_scale` is `s`.
    pub fn value_gradient_hessian_scaled(
        &self,
        w: &EvalPoint<T>,
    ) -> Result<(T::Acc, Vec<T::Acc>, Vec<T::Acc>, T)> {
        let alpha = MultiIndex::zero(self.n());
        let want = Want { value: true, gradient: true, hessian: true };
        let (out, sw) = self.run(&alpha, w, want)?;
        Ok((out.value, out.gradient, out.hessian, sw))
    }

    /// Weighted rank strata `c_k Z^k_M(w_1..w_n)` for `k = 0..=n`.
    pub fn strata(&self, w: &[T]) -> Result<Vec<T>> {
        let n = self.n();
        if w.len() != n {
            return Err(Error::InvalidParameters(format!(
                "expected {n} weights, got {}",
                w.len()
            )));
        }
        let (weights, sw) = T::split_common(w);
        let products = subset_products(&weights);
        let mut acc = vec![T::Acc::zero(); n + 1];
        for (mask, p) in products.iter().enumerate() {
            let size = mask.count_ones() as usize;
            let idx = size * self.ranks + self.matroid.rank_mask(mask as u64);
            acc[size].add_ref(&self.table[idx].mul_ref(p));
        }
        Ok(acc
            .iter()
            .enumerate()
            .map(|(k, a)| T::from_acc(a) * self.scale.clone() * sw.powi(k as i32))
            .collect())
    }
}
