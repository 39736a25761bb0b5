use super::kernel::{subset_products, WeightedPotts};
use super::types::{CoeffSeq, EvalPoint, MultiIndex};
use crate::error::{Error, Result};
use crate::matroid::{check_cap, GroundSubset, Matroid};
use crate::scalar::{Accumulator, Scalar};
use crate::spectral::SymMatrix;
use num_traits::Zero;

/// `Z^k_M(q, w) = sum over k-subsets A of q^{-rk(A)} prod_{i in A} w_i`.
/// Returns zero for `k > n`.
pub fn zk_eval<T: Scalar>(m: &Matroid, k: usize, q: &T, w: &[T]) -> Result<T> {
    let all = zk_all(m, q, w)?;
    Ok(all.get(k).cloned().unwrap_or_else(T::zero))
}

/// `Z^0_M, ..., Z^n_M` from one pass over the subsets.
pub fn zk_all<T: Scalar>(m: &Matroid, q: &T, w: &[T]) -> Result<Vec<T>> {
    check_cap(m.n())?;
    WeightedPotts::homogeneous(m, q)?.strata(w)
}

/// `Z_{M,c}(q, w)`.
pub fn z_weighted_eval<T: Scalar>(m: &Matroid, c: &CoeffSeq<T>, q: &T, w: &EvalPoint<T>) -> Result<T> {
    partial_eval(m, c, q, &MultiIndex::zero(m.n()), w)
}

/// `d^alpha Z_{M,c}` at `w`; zero when the derivative vanishes identically.
pub fn partial_eval<T: Scalar>(
    m: &Matroid,
    c: &CoeffSeq<T>,
    q: &T,
    alpha: &MultiIndex,
    w: &EvalPoint<T>,
) -> Result<T> {
    check_cap(m.n())?;
    WeightedPotts::new(m, c, q)?.value(alpha, w)
}

/// Whether `d^alpha Z_{M,c}` is the zero polynomial. With `c > 0` no
/// cancellation is possible, so this depends only on `n` and `alpha`: the
/// term for `A = E` survives unless some `alpha_i >= 2` with `i >= 1` or the
/// total order exceeds `n`.
pub fn is_identically_zero<T: Scalar>(m: &Matroid, _c: &CoeffSeq<T>, _q: &T, alpha: &MultiIndex) -> bool {
    alpha.repeats_multiaffine_variable() || alpha.degree() > m.n()
}

/// Hessian of `d^alpha Z_{M,c}` at `w`, indices `0..=n`.
pub fn hessian<T: Scalar>(
    m: &Matroid,
    c: &CoeffSeq<T>,
    q: &T,
    alpha: &MultiIndex,
    w: &EvalPoint<T>,
) -> Result<SymMatrix<T>> {
    check_cap(m.n())?;
    WeightedPotts::new(m, c, q)?.hessian(alpha, w)
}

/// Variables that `d^alpha Z_{M,c}` still depends on: `w_0` and every
/// `w_i` not already differentiated. Only meaningful while the degree is
/// at least one.
pub fn active_variables(n: usize, alpha: &MultiIndex) -> Vec<usize> {
    let a = alpha.as_slice();
    (0..=n).filter(|&i| i == 0 || a.get(i).copied().unwrap_or(0) == 0).collect()
}

fn check_weights<T>(m: &Matroid, w: &[T]) -> Result<()> {
    if w.len() != m.n() {
        return Err(Error::InvalidParameters(format!(
            "expected {} weights, got {}",
            m.n(),
            w.len()
        )));
    }
    Ok(())
}

/// `f^0_M, ..., f^n_M`: sums of `prod w_i` over independent sets by size.
pub fn f_all<T: Scalar>(m: &Matroid, w: &[T]) -> Result<Vec<T>> {
    check_cap(m.n())?;
    check_weights(m, w)?;
    let n = m.n();
    let (weights, sw) = T::split_common(w);
    let products = subset_products(&weights);
    let mut acc = vec![T::Acc::zero(); n + 1];
    for (mask, p) in products.iter().enumerate() {
        let size = mask.count_ones() as usize;
        if m.rank_mask(mask as u64) == size {
            acc[size].add_ref(p);
        }
    }
    Ok(acc
        .iter()
        .enumerate()
        .map(|(k, a)| T::from_acc(a) * sw.powi(k as i32))
        .collect())
}

/// `f^m_M(w)`, zero for `m > n`.
pub fn f_m_eval<T: Scalar>(m: &Matroid, mm: usize, w: &[T]) -> Result<T> {
    Ok(f_all(m, w)?.get(mm).cloned().unwrap_or_else(T::zero))
}

/// `|Z^m_M(q, q w) - f^m_M(w)|`. Each `m`-subset contributes
/// `q^{m - rk(A)} prod w_i`, so the residual is `O(q)`.
pub fn f_limit_residual<T: Scalar>(m: &Matroid, mm: usize, w: &[T], q: &T) -> Result<T> {
    if !q.is_positive() || *q > T::one() {
        return Err(Error::InvalidParameters(format!("q must lie in (0, 1], got {q:?}")));
    }
    check_weights(m, w)?;
    let qw: Vec<T> = w.iter().map(|x| x.clone() * q.clone()).collect();
    let z = zk_eval(m, mm, q, &qw)?;
    Ok((z - f_m_eval(m, mm, w)?).abs())
}

/// `e_k` in the variables `w_i`, `i in U`, with `w` indexed by label - 1.
pub fn elementary_symmetric<T: Scalar>(u: GroundSubset, k: usize, w: &[T]) -> Result<T> {
    let mut e = vec![T::zero(); k + 1];
    e[0] = T::one();
    for i in u.elements() {
        let x = w.get(i - 1).ok_or_else(|| {
            Error::InvalidParameters(format!("element {i} has no weight among {}", w.len()))
        })?;
        for j in (1..=k).rev() {
            e[j] = e[j].clone() + e[j - 1].clone() * x.clone();
        }
    }
    Ok(e.pop().unwrap_or_else(T::zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rational, Rational};
    use num_traits::{One, Zero};

    fn r(n: i64) -> Rational {
        rational(n, 1)
    }

    fn point(v: &[i64]) -> EvalPoint<Rational> {
        EvalPoint::new(v.iter().map(|&x| r(x)).collect())
    }

    fn u12() -> Matroid {
        Matroid::uniform(1, 2).unwrap()
    }

    fn k3() -> Matroid {
        Matroid::graphic(3, &[(1, 2), (2, 3), (1, 3)]).unwrap()
    }

    #[test]
    fn zk_examples() {
        let m = u12();
        assert_eq!(zk_eval(&m, 2, &rational(1, 2), &[r(1), r(1)]).unwrap(), r(2));
        assert_eq!(zk_eval(&m, 0, &rational(1, 3), &[r(5), r(7)]).unwrap(), r(1));
        assert_eq!(zk_eval(&m, 3, &r(1), &[r(1), r(1)]).unwrap(), r(0));
        assert!(zk_eval(&m, 1, &r(0), &[r(1), r(1)]).is_err());
        let m = Matroid::uniform(2, 5).unwrap();
        let all = zk_all(&m, &r(1), &vec![r(1); 5]).unwrap();
        assert_eq!(all, [1, 5, 10, 10, 5, 1].map(r));
    }

    #[test]
    fn weighted_examples() {
        let m = u12();
        let c = CoeffSeq::ones(2);
        assert_eq!(z_weighted_eval(&m, &c, &r(1), &point(&[1, 1, 1])).unwrap(), r(4));
        assert_eq!(z_weighted_eval(&m, &c, &r(1), &point(&[0, 1, 1])).unwrap(), r(1));
        let alpha = MultiIndex::new(vec![1, 0, 0]);
        assert_eq!(partial_eval(&m, &c, &r(1), &alpha, &point(&[1, 1, 1])).unwrap(), r(4));
        let twice = MultiIndex::new(vec![0, 2, 0]);
        assert_eq!(partial_eval(&m, &c, &r(1), &twice, &point(&[3, 5, 7])).unwrap(), r(0));

        let empty = Matroid::uniform(0, 0).unwrap();
        let c0 = CoeffSeq::new(vec![r(7)]).unwrap();
        assert_eq!(z_weighted_eval(&empty, &c0, &rational(1, 9), &point(&[4])).unwrap(), r(7));
        assert!(z_weighted_eval(&m, &c, &r(1), &point(&[1, 1])).is_err());
    }

    #[test]
    fn identically_zero_examples() {
        let m = u12();
        let c = CoeffSeq::<Rational>::ones(2);
        let q = r(1);
        assert!(!is_identically_zero(&m, &c, &q, &MultiIndex::zero(2)));
        assert!(is_identically_zero(&m, &c, &q, &MultiIndex::new(vec![0, 2, 0])));
        assert!(is_identically_zero(&m, &c, &q, &MultiIndex::new(vec![3, 0, 0])));
        assert!(!is_identically_zero(&m, &c, &q, &MultiIndex::new(vec![1, 1, 0])));
    }

    #[test]
    fn hessian_examples() {
        let c = CoeffSeq::ones(2);
        let h = hessian(&u12(), &c, &r(1), &MultiIndex::zero(2), &point(&[1, 1, 1])).unwrap();
        let expected = SymMatrix::from_rows(vec![
            vec![r(2), r(1), r(1)],
            vec![r(1), r(0), r(1)],
            vec![r(1), r(1), r(0)],
        ])
        .unwrap();
        assert_eq!(h, expected);

        // At q = 1 the rank drops out: the free matroid on two elements has
        // the same Z as U_{1,2}, so w_0^2 keeps H_00 = 2c_0 away from zero.
        let free = Matroid::uniform(2, 2).unwrap();
        let h2 = hessian(&free, &c, &r(1), &MultiIndex::zero(2), &point(&[1, 1, 1])).unwrap();
        assert_eq!(h2, expected);
        let c = CoeffSeq::new(vec![r(5), r(3), r(1)]).unwrap();
        let h = hessian(&free, &c, &rational(1, 2), &MultiIndex::zero(2), &point(&[1, 1, 1])).unwrap();
        assert_eq!(*h.get(0, 0), r(10));
        assert_eq!(*h.get(1, 1), r(0));
        assert_eq!(*h.get(1, 2), r(4));
        assert_eq!(*h.get(0, 1), r(6));

        let low = MultiIndex::new(vec![1, 1, 0]);
        let h = hessian(&u12(), &c, &r(1), &low, &point(&[2, 3, 5])).unwrap();
        assert_eq!(h, SymMatrix::zeros(3));
    }

    #[test]
    fn independent_set_polynomials() {
        assert_eq!(f_m_eval(&u12(), 2, &[r(3), r(4)]).unwrap(), r(0));
        assert_eq!(f_m_eval(&k3(), 2, &[r(1), r(1), r(1)]).unwrap(), r(3));
        assert_eq!(f_m_eval(&k3(), 0, &[r(2), r(3), r(5)]).unwrap(), r(1));
        assert_eq!(f_all(&k3(), &[r(1), r(1), r(1)]).unwrap(), [1, 3, 3, 0].map(r));
    }

    #[test]
    fn limit_residual_examples() {
        for q in [rational(1, 2), rational(1, 100), rational(1, 1_000_000)] {
            let res = f_limit_residual(&u12(), 2, &[r(1), r(1)], &q).unwrap();
            assert_eq!(res, q);
            let free = Matroid::uniform(3, 3).unwrap();
            for m in 0..=3 {
                assert!(f_limit_residual(&free, m, &[r(2), r(3), r(5)], &q).unwrap().is_zero());
            }
        }
        let q = rational(1, 1_000_000);
        assert_eq!(f_limit_residual(&k3(), 3, &[r(1), r(1), r(1)], &q).unwrap(), q);
        assert!(f_limit_residual(&k3(), 3, &[r(1), r(1), r(1)], &r(2)).is_err());
    }

    #[test]
    fn elementary_symmetric_examples() {
        let u = GroundSubset::from_elements(&[1, 2, 3]).unwrap();
        assert_eq!(elementary_symmetric(u, 1, &[r(1), r(2), r(3)]).unwrap(), r(6));
        assert_eq!(elementary_symmetric(u, 0, &[r(1), r(2), r(3)]).unwrap(), Rational::one());
        let u = GroundSubset::from_elements(&[1, 2]).unwrap();
        assert_eq!(elementary_symmetric(u, 2, &[r(2), r(5)]).unwrap(), r(10));
        assert_eq!(elementary_symmetric(u, 3, &[r(2), r(5)]).unwrap(), r(0));
    }

    #[test]
    fn float_mode_prescales_small_q() {
        let m = Matroid::uniform(3, 6).unwrap();
        let c = CoeffSeq::<f64>::ones(6);
        let q = 1e-6;
        let w = EvalPoint::new(vec![1.0; 7]);
        let h = hessian(&m, &c, &q, &MultiIndex::zero(6), &w).unwrap();
        let exact = hessian(
            &m,
            &CoeffSeq::ones(6),
            &rational(1, 1_000_000),
            &MultiIndex::zero(6),
            &EvalPoint::ones(6),
        )
        .unwrap();
        for (a, b) in h.entries().iter().zip(exact.entries()) {
            assert!(f64::approx_eq(a, &b.to_f64()), "{a} vs {b}");
        }
    }
}
