use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use potts_hodge::harness::{run_campaign, reverify, CampaignConfig, CorpusEntry, Theorem, VerificationReport};
use potts_hodge::potts::{elementary_symmetric, zk_all, zk_eval, WeightedPotts};
use potts_hodge::scalar::rational;
use potts_hodge::spectral::{euler_hessian_residual, float_inertia, hr_discriminant, DEFAULT_RELATIVE_TOL};
use potts_hodge::{CoeffSeq, Error, EvalPoint, GroundSubset, Matroid, MultiIndex, Rational, SymMatrix};

fn uniform() -> impl Strategy<Value = Matroid> {
    (1usize..=6).prop_flat_map(|n| (0..=n, Just(n))).prop_map(|(r, n)| Matroid::uniform(r, n).unwrap())
}

/// Column matroids over GF(2) or GF(3): zero columns give loops, repeated
/// columns give parallel classes.
fn linear() -> impl Strategy<Value = Matroid> {
    (prop_oneof![Just(2u64), Just(3u64)], 1usize..=3, 1usize..=6).prop_flat_map(|(p, rows, cols)| {
        prop::collection::vec(prop::collection::vec(0i64..p as i64, cols), rows)
            .prop_map(move |m| Matroid::linear(p, &m).unwrap())
    })
}

fn graphic() -> impl Strategy<Value = Matroid> {
    prop::collection::vec((1usize..=4, 1usize..=4), 1..=6)
        .prop_map(|edges| Matroid::graphic(4, &edges).unwrap())
}

fn matroid() -> impl Strategy<Value = Matroid> {
    prop_oneof![uniform(), linear(), graphic()]
}

fn pos_rational() -> impl Strategy<Value = Rational> {
    (1i64..=30, 1i64..=30).prop_map(|(a, b)| rational(a, b))
}

fn signed_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=10).prop_map(|(a, b)| rational(a, b))
}

fn q_value() -> impl Strategy<Value = Rational> {
    (1i64..=20).prop_flat_map(|d| (1..=d, Just(d))).prop_map(|(a, d)| rational(a, d))
}

/// A matroid with a point `w` in `R^{n+1}` (positive) and a point in `R^n`
/// (signed).
fn matroid_with_points() -> impl Strategy<Value = (Matroid, Vec<Rational>, Vec<Rational>)> {
    matroid().prop_flat_map(|m| {
        let n = m.n();
        (
            Just(m),
            prop::collection::vec(pos_rational(), n + 1),
            prop::collection::vec(signed_rational(), n),
        )
    })
}

fn symmetric_int(max_dim: usize) -> impl Strategy<Value = SymMatrix<Rational>> {
    (2..=max_dim).prop_flat_map(|d| {
        prop::collection::vec(-6i64..=6, d * d).prop_map(move |e| {
            SymMatrix::from_fn(d, |i, j| rational(e[i.min(j) * d + i.max(j)], 1))
        })
    })
}

fn unimodular(d: usize, ops: &[(usize, usize, i64)]) -> Vec<Vec<i64>> {
    let mut s: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| (i == j) as i64).collect()).collect();
    for &(i, j, k) in ops {
        let (i, j) = (i % d, j % d);
        if i != j {
            for c in 0..d {
                s[i][c] += k * s[j][c];
            }
        }
    }
    s
}

fn congruent(a: &SymMatrix<Rational>, s: &[Vec<i64>]) -> SymMatrix<Rational> {
    let d = a.dim();
    SymMatrix::from_fn(d, |x, y| {
        let mut acc = Rational::zero();
        for i in 0..d {
            for j in 0..d {
                acc += rational(s[i][x] * s[j][y], 1) * a.get(i, j).clone();
            }
        }
        acc
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_axioms_hold_for_constructors(m in matroid()) {
        prop_assert!(m.check_axioms().is_ok());
        let counts = m.independent_set_counts().unwrap();
        prop_assert_eq!(counts[0], 1);
        prop_assert_eq!(counts.iter().rposition(|&c| c > 0).unwrap(), m.full_rank());
    }

    #[test]
    fn corrupted_rank_tables_are_rejected(m in linear(), bump in 1usize..64) {
        let mut ranks: Vec<i64> = m.rank_table().iter().map(|&r| r as i64).collect();
        let idx = bump % ranks.len();
        ranks[idx] += 2;
        prop_assert!(matches!(Matroid::from_rank_table(m.n(), &ranks), Err(Error::NotAMatroid(_))));
    }

    #[test]
    fn euler_identity_for_values((m, w, _) in matroid_with_points(), q in q_value(), ratio in 2i64..4) {
        let n = m.n();
        let c = CoeffSeq::geometric_log_concave(n, &rational(ratio, 1)).unwrap();
        let z = WeightedPotts::new(&m, &c, &q).unwrap();
        let w = EvalPoint::new(w);
        let alpha = MultiIndex::zero(n);
        let grad = z.gradient(&alpha, &w).unwrap();
        let lhs = grad.iter().zip(w.as_slice()).fold(Rational::zero(), |a, (g, x)| a + g * x);
        prop_assert_eq!(lhs, z.value(&alpha, &w).unwrap() * rational(n as i64, 1));
    }

    #[test]
    fn euler_identity_for_hessians((m, w, _) in matroid_with_points(), q in q_value(), t in 0usize..4) {
        let n = m.n();
        prop_assume!(n >= 3);
        let mut a = vec![0; n + 1];
        a[0] = t.min(n - 3);
        let alpha = MultiIndex::new(a);
        let c = CoeffSeq::geometric_log_concave(n, &rational(2, 1)).unwrap();
        let r = euler_hessian_residual(&m, &c, &q, &alpha, &EvalPoint::new(w)).unwrap();
        prop_assert!(r.is_zero());
    }

    #[test]
    fn contraction_identity((m, _, w) in matroid_with_points(), q in q_value(), i in 1usize..=6, l in 1usize..=6) {
        let n = m.n();
        prop_assume!(i <= n && l <= n);
        // Z^l is affine in w_i, so the derivative is a difference.
        let at = |v: Rational| {
            let mut p = w.clone();
            p[i - 1] = v;
            zk_eval(&m, l, &q, &p).unwrap()
        };
        let derivative = at(Rational::one()) - at(Rational::zero());
        let minor = m.contract(GroundSubset::from_elements(&[i]).unwrap());
        let rest: Vec<Rational> = minor.labels.iter().map(|&j| w[j - 1].clone()).collect();
        let r = m.rank(GroundSubset::from_elements(&[i]).unwrap()) as i32;
        let expected = zk_eval(&minor.matroid, l - 1, &q, &rest).unwrap() / q.pow(r);
        prop_assert_eq!(derivative, expected);
    }

    #[test]
    fn degree_two_decomposition((m, _, w) in matroid_with_points(), q in q_value()) {
        prop_assume!(m.n() >= 2);
        let loops = m.loops();
        let sub: Vec<Rational> = w
            .iter()
            .enumerate()
            .map(|(i, x)| if loops.contains(i + 1) { x.clone() } else { x * &q })
            .collect();
        let z = zk_all(&m, &q, &sub).unwrap();
        let e2 = |set: GroundSubset| elementary_symmetric(set, 2, &w).unwrap();
        let classes = m.structure().parallel_classes;
        let class_sum = classes
            .iter()
            .fold(Rational::zero(), |a, c| a + e2(GroundSubset::from_elements(c).unwrap()));
        prop_assert_eq!(z[2].clone(), e2(m.ground()) - (Rational::one() - q.clone()) * class_sum);
        prop_assert_eq!(z[1].clone(), e1(&w));
    }

    #[test]
    fn q_one_collapses_to_elementary_symmetric((m, _, w) in matroid_with_points()) {
        let z = zk_all(&m, &Rational::one(), &w).unwrap();
        for (k, zk) in z.iter().enumerate() {
            prop_assert_eq!(zk.clone(), elementary_symmetric(m.ground(), k, &w).unwrap());
        }
    }

    #[test]
    fn exact_and_float_agree((m, w, _) in matroid_with_points(), q in q_value()) {
        let n = m.n();
        let alpha = MultiIndex::zero(n);
        let exact = WeightedPotts::homogeneous(&m, &q).unwrap();
        let float = WeightedPotts::<f64>::homogeneous(&m, &potts_hodge::Scalar::to_f64(&q)).unwrap();
        let wf: Vec<f64> = w.iter().map(potts_hodge::Scalar::to_f64).collect();
        let he = exact.hessian(&alpha, &EvalPoint::new(w)).unwrap();
        let hf = float.hessian(&alpha, &EvalPoint::new(wf)).unwrap();
        for (a, b) in he.entries().iter().zip(hf.entries()) {
            let a = potts_hodge::Scalar::to_f64(a);
            prop_assert!((a - b).abs() <= 1e-10 * a.abs().max(1.0), "{} vs {}", a, b);
        }
    }

    #[test]
    fn signature_is_congruence_invariant(a in symmetric_int(6), ops in prop::collection::vec((0usize..6, 0usize..6, -2i64..=2), 0..12)) {
        let s = unimodular(a.dim(), &ops);
        prop_assert_eq!(a.signature().unwrap(), congruent(&a, &s).signature().unwrap());
    }

    #[test]
    fn exact_and_float_signatures_agree_when_well_separated(a in symmetric_int(6)) {
        let f = a.to_f64();
        if let Ok(fs) = float_inertia(&f, DEFAULT_RELATIVE_TOL) {
            if fs.eigenvalues.iter().all(|l| l.abs() > 10.0 * fs.tol) {
                prop_assert_eq!(fs.signature, a.signature().unwrap());
            }
        }
    }

    #[test]
    fn one_positive_implies_nonnegative_discriminant(
        a in symmetric_int(5),
        u in prop::collection::vec(-9i64..=9, 5),
        v in prop::collection::vec(-9i64..=9, 5),
    ) {
        prop_assume!(a.signature().unwrap().n_pos == 1);
        let d = a.dim();
        let u: Vec<Rational> = u[..d].iter().map(|&x| rational(x, 1)).collect();
        let v: Vec<Rational> = v[..d].iter().map(|&x| rational(x, 1)).collect();
        let h = hr_discriminant(&a, &u, &v).unwrap();
        if h.u_form_positive {
            prop_assert!(!h.value.is_negative());
        }
    }
}

fn e1(w: &[Rational]) -> Rational {
    w.iter().fold(Rational::zero(), |a, x| a + x)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn reports_round_trip(m in matroid(), seed in 0u64..1000) {
        let corpus = vec![CorpusEntry::new("sample", m)];
        let config = CampaignConfig {
            seed,
            w_samples: 3,
            alpha_samples: 2,
            qw_samples: 2,
            c_ratios: vec![rational(2, 1)],
            ..Default::default()
        };
        let report = run_campaign(&corpus, &Theorem::ALL, &config).unwrap();
        let back = VerificationReport::from_json(&report.to_json()).unwrap();
        prop_assert_eq!(back.to_json(), report.to_json());
        prop_assert_eq!(reverify(&back).unwrap(), report.verdicts());
    }
}
