//! Seeded samplers for `q`, `w`, `c` and multi-indices.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use super::config::CampaignConfig;
use crate::error::Result;
use crate::potts::{CoeffSeq, MultiIndex};
use crate::scalar::{binomial, rational, Rational};

/// `a/b` with `a, b` uniform in `1..=max`.
pub fn positive_rational(rng: &mut impl Rng, max: u64) -> Rational {
    let a = rng.gen_range(1..=max) as i64;
    let b = rng.gen_range(1..=max) as i64;
    rational(a, b)
}

/// A random `q` in `(0, 1]` with denominator at most 100.
pub fn random_q(rng: &mut impl Rng) -> Rational {
    let den = rng.gen_range(1..=100i64);
    let num = rng.gen_range(1..=den);
    rational(num, den)
}

/// The `q` values of a campaign: the grid (with `1`) then seeded extras.
pub fn q_values(config: &CampaignConfig, rng: &mut impl Rng) -> Vec<Rational> {
    let mut qs = config.grid_with_one();
    for _ in 0..config.random_q {
        let q = random_q(rng);
        if !qs.contains(&q) {
            qs.push(q);
        }
    }
    qs
}

/// Points that sit close to equality manifolds: nearly parallel to `e_0`,
/// near the center, and with coordinate ratios of `10^{+-3}`.
pub fn adversarial_points(len: usize) -> Vec<Vec<Rational>> {
    let eps = rational(1, 1000);
    let big = rational(1000, 1);
    let mut e0 = vec![eps.clone(); len];
    if let Some(first) = e0.first_mut() {
        *first = Rational::one();
    }
    let center = (0..len).map(|i| rational(1000 + i as i64, 1000)).collect();
    let skewed = (0..len)
        .map(|i| if i % 2 == 0 { big.clone() } else { eps.clone() })
        .collect();
    vec![e0, center, skewed]
}

/// `count` strictly positive points of length `len`.
pub fn positive_points(rng: &mut impl Rng, len: usize, count: usize, config: &CampaignConfig) -> Vec<Vec<Rational>> {
    let mut out = Vec::with_capacity(count);
    if config.adversarial {
        out.extend(adversarial_points(len).into_iter().take(count));
    }
    while out.len() < count {
        out.push((0..len).map(|_| positive_rational(rng, config.w_max)).collect());
    }
    out
}

/// `count` nonnegative points of length `len`, including the all-ones point
/// and points with zero coordinates.
pub fn boundary_points(rng: &mut impl Rng, len: usize, count: usize, config: &CampaignConfig) -> Vec<Vec<Rational>> {
    let mut out = Vec::with_capacity(count);
    if count > 0 {
        out.push(vec![Rational::one(); len]);
    }
    while out.len() < count {
        let p = (0..len)
            .map(|_| {
                if rng.gen_ratio(1, 4) {
                    Rational::zero()
                } else {
                    positive_rational(rng, config.w_max)
                }
            })
            .collect();
        out.push(p);
    }
    out
}

/// A nonzero integer point in `[-9, 9]^len`.
pub fn nonzero_integer_point(rng: &mut impl Rng, len: usize) -> Vec<Rational> {
    loop {
        let p: Vec<i64> = (0..len).map(|_| rng.gen_range(-9..=9)).collect();
        if p.iter().any(|&x| x != 0) {
            return p.into_iter().map(|x| rational(x, 1)).collect();
        }
    }
}

/// The strictly log-concave coefficient sequences of a campaign.
pub fn coefficient_family(n: usize, config: &CampaignConfig) -> Result<Vec<CoeffSeq<Rational>>> {
    match &config.c_override {
        Some(c) => Ok(vec![CoeffSeq::new(c.clone())?]),
        None => config
            .c_ratios
            .iter()
            .map(|r| CoeffSeq::geometric_log_concave(n, r))
            .collect(),
    }
}

/// Number of multi-indices `alpha` with `alpha_i <= 1` for `i >= 1` and
/// `n - |alpha| >= 2`.
pub fn admissible_count(n: usize) -> u128 {
    if n < 2 {
        return 0;
    }
    (0..=n - 2).map(|t| binomial(n, t) * (n - 1 - t) as u128).sum()
}

fn all_admissible(n: usize) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    for mask in 0u64..1 << n {
        let t = mask.count_ones() as usize;
        if t > n - 2 {
            continue;
        }
        for a0 in 0..=n - 2 - t {
            let mut a = vec![a0];
            a.extend((0..n).map(|i| (mask >> i & 1) as usize));
            out.push(MultiIndex::new(a));
        }
    }
    out
}

/// Up to `count` distinct multi-indices whose derivative has degree at
/// least two. The zero index and `(n - 2, 0, ..., 0)` come first.
pub fn admissible_alphas(rng: &mut impl Rng, n: usize, count: usize) -> Vec<MultiIndex> {
    if n < 2 || count == 0 {
        return Vec::new();
    }
    let total = admissible_count(n);
    if total <= count as u128 || n <= 10 {
        let mut all = all_admissible(n);
        let zero = MultiIndex::zero(n);
        let quad = {
            let mut a = vec![0; n + 1];
            a[0] = n - 2;
            MultiIndex::new(a)
        };
        all.retain(|a| *a != zero && *a != quad);
        all.shuffle(rng);
        let mut out = vec![zero];
        if quad != out[0] {
            out.push(quad);
        }
        out.extend(all);
        out.truncate(count);
        return out;
    }
    let mut seen = BTreeSet::new();
    let mut out = vec![MultiIndex::zero(n)];
    seen.insert(out[0].clone());
    while out.len() < count {
        let t = rng.gen_range(0..=n - 2);
        let mut idx: Vec<usize> = (0..n).collect();
        idx.shuffle(rng);
        let mut a = vec![0; n + 1];
        a[0] = rng.gen_range(0..=n - 2 - t);
        for &i in &idx[..t] {
            a[i + 1] = 1;
        }
        let a = MultiIndex::new(a);
        if seen.insert(a.clone()) {
            out.push(a);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_for;
    use num_traits::Signed;

    #[test]
    fn admissible_counts_match_enumeration() {
        for n in 0..8 {
            assert_eq!(admissible_count(n), all_admissible(n).len() as u128);
        }
        assert_eq!(admissible_count(2), 1);
    }

    #[test]
    fn alphas_are_distinct_and_admissible() {
        for n in 2..14 {
            let a = admissible_alphas(&mut rng_for(1, &[n as u64]), n, 10);
            assert_eq!(a.len() as u128, admissible_count(n).min(10));
            let set: BTreeSet<_> = a.iter().collect();
            assert_eq!(set.len(), a.len());
            for x in &a {
                assert!(!x.as_slice()[1..].iter().any(|&v| v > 1));
                assert!(n - x.degree() >= 2);
            }
        }
    }

    #[test]
    fn samplers_respect_their_ranges() {
        let config = CampaignConfig::default();
        let mut rng = rng_for(3, &[]);
        for p in positive_points(&mut rng, 5, 20, &config) {
            assert!(p.iter().all(|x| x.is_positive()));
        }
        let b = boundary_points(&mut rng, 5, 20, &config);
        assert!(b.iter().flatten().all(|x| !x.is_negative()));
        assert!(b.iter().flatten().any(|x| x.is_zero()));
        for _ in 0..100 {
            let q = random_q(&mut rng);
            assert!(q.is_positive() && q <= Rational::one());
        }
        let qs = q_values(&CampaignConfig { random_q: 3, ..config.clone() }, &mut rng);
        assert!(qs.len() >= 5 && qs[0] == Rational::one());
    }

    #[test]
    fn family_is_strict() {
        let config = CampaignConfig::default();
        for c in coefficient_family(6, &config).unwrap() {
            assert!(c.is_strictly_log_concave());
        }
    }
}
