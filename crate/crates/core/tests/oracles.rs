//! The subset-product engine against a symbolic expansion of `Z_{M,c}`
//! as a list of monomials, differentiated term by term.

use num_traits::{One, Zero};

use potts_hodge::harness::generate_corpus;
use potts_hodge::potts::{f_all, hessian, partial_eval, zk_all, WeightedPotts};
use potts_hodge::rng::rng_for;
use potts_hodge::scalar::rational;
use potts_hodge::{CoeffSeq, EvalPoint, Matroid, MultiIndex, Rational};
use rand::Rng;

struct Monomial {
    coeff: Rational,
    exponents: Vec<u32>,
}

fn expand(m: &Matroid, c: &CoeffSeq<Rational>, q: &Rational) -> Vec<Monomial> {
    let n = m.n();
    (0u64..1 << n)
        .map(|mask| {
            let size = mask.count_ones();
            let mut exponents = vec![n as u32 - size];
            exponents.extend((0..n).map(|i| (mask >> i & 1) as u32));
            Monomial {
                coeff: c.values()[size as usize].clone() / q.pow(m.rank_mask(mask) as i32),
                exponents,
            }
        })
        .collect()
}

fn differentiate(terms: &[Monomial], alpha: &[u32]) -> Vec<Monomial> {
    terms
        .iter()
        .filter_map(|t| {
            let mut coeff = t.coeff.clone();
            let mut exponents = t.exponents.clone();
            for (e, &a) in exponents.iter_mut().zip(alpha) {
                for _ in 0..a {
                    if *e == 0 {
                        return None;
                    }
                    coeff *= rational(*e as i64, 1);
                    *e -= 1;
                }
            }
            Some(Monomial { coeff, exponents })
        })
        .collect()
}

fn evaluate(terms: &[Monomial], w: &[Rational]) -> Rational {
    terms.iter().fold(Rational::zero(), |acc, t| {
        acc + t
            .exponents
            .iter()
            .zip(w)
            .fold(t.coeff.clone(), |p, (&e, x)| p * x.pow(e as i32))
    })
}

fn sample_inputs(seed: u64, n: usize) -> (CoeffSeq<Rational>, Rational, Vec<Rational>, Vec<u32>) {
    let mut rng = rng_for(seed, &[]);
    let c = CoeffSeq::new((0..=n).map(|_| rational(rng.gen_range(1..20), rng.gen_range(1..5))).collect()).unwrap();
    let q = rational(rng.gen_range(1..10), rng.gen_range(10..20));
    let w = (0..=n).map(|_| rational(rng.gen_range(1..30), rng.gen_range(1..7))).collect();
    let mut alpha = vec![rng.gen_range(0..3u32)];
    alpha.extend((0..n).map(|_| rng.gen_bool(0.25) as u32));
    (c, q, w, alpha)
}

#[test]
fn values_derivatives_and_hessians_match_the_expansion() {
    let corpus = generate_corpus("uniform:max_n=5;graphic:max_edges=4;structured").unwrap();
    for (idx, e) in corpus.iter().enumerate() {
        let m = &e.matroid;
        let n = m.n();
        let (c, q, w, alpha) = sample_inputs(idx as u64, n);
        let terms = differentiate(&expand(m, &c, &q), &alpha);
        let a = MultiIndex::new(alpha.iter().map(|&x| x as usize).collect());
        let point = EvalPoint::new(w.clone());

        assert_eq!(partial_eval(m, &c, &q, &a, &point).unwrap(), evaluate(&terms, &w), "{}", e.name);

        let h = hessian(m, &c, &q, &a, &point).unwrap();
        for i in 0..=n {
            for j in 0..=n {
                let mut unit = vec![0u32; n + 1];
                unit[i] += 1;
                unit[j] += 1;
                let second = evaluate(&differentiate(&terms, &unit), &w);
                assert_eq!(*h.get(i, j), second, "{} H[{i}][{j}]", e.name);
            }
        }
    }
}

#[test]
fn strata_and_independent_sets_match_direct_sums() {
    let corpus = generate_corpus("uniform:max_n=5;graphic:max_edges=4;structured").unwrap();
    for (idx, e) in corpus.iter().enumerate() {
        let m = &e.matroid;
        let n = m.n();
        let (_, q, w, _) = sample_inputs(100 + idx as u64, n);
        let w = &w[1..];
        let mut z = vec![Rational::zero(); n + 1];
        let mut f = vec![Rational::zero(); n + 1];
        for mask in 0u64..1 << n {
            let size = mask.count_ones() as usize;
            let p = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .fold(Rational::one(), |a, i| a * w[i].clone());
            let r = m.rank_mask(mask);
            z[size] += p.clone() / q.pow(r as i32);
            if r == size {
                f[size] += p;
            }
        }
        assert_eq!(zk_all(m, &q, w).unwrap(), z, "{}", e.name);
        assert_eq!(f_all(m, w).unwrap(), f, "{}", e.name);
    }
}

#[test]
fn float_engine_tracks_exact_engine() {
    let corpus = generate_corpus("uniform:max_n=6;structured").unwrap();
    for (idx, e) in corpus.iter().enumerate() {
        let m = &e.matroid;
        let n = m.n();
        let (c, q, w, alpha) = sample_inputs(200 + idx as u64, n);
        let a = MultiIndex::new(alpha.iter().map(|&x| x as usize).collect());
        let exact = WeightedPotts::new(m, &c, &q).unwrap();
        let cf = CoeffSeq::new(c.values().iter().map(potts_hodge::Scalar::to_f64).collect()).unwrap();
        let float = WeightedPotts::new(m, &cf, &potts_hodge::Scalar::to_f64(&q)).unwrap();
        let wf: Vec<f64> = w.iter().map(potts_hodge::Scalar::to_f64).collect();
        let he = exact.hessian(&a, &EvalPoint::new(w)).unwrap();
        let hf = float.hessian(&a, &EvalPoint::new(wf)).unwrap();
        let scale = he.entries().iter().map(potts_hodge::Scalar::to_f64).fold(1.0f64, |s, x| s.max(x.abs()));
        for (x, y) in he.entries().iter().zip(hf.entries()) {
            assert!((potts_hodge::Scalar::to_f64(x) - y).abs() <= 1e-10 * scale, "{}", e.name);
        }
    }
}
