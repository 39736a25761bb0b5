use serde::Serialize;

use super::{GroundSubset, Matroid, Provenance};

/// A minor together with the relabeling map: element `i` of the minor
/// (1-based) is element `labels[i - 1]` of the original matroid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Minor {
    pub matroid: Matroid,
    pub labels: Vec<usize>,
}

/// Loops, parallel classes and the rank-one flat count of a matroid.
/// Element labels are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub loops: Vec<usize>,
    pub parallel_classes: Vec<Vec<usize>>,
    pub rank_one_flats: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simplification {
    pub matroid: Matroid,
    /// One original element per parallel class, in class order.
    pub representatives: Vec<usize>,
    /// Set when the matroid has no non-loop elements.
    pub degenerate: bool,
}

impl Matroid {
    /// Keeps the elements outside `removed` and measures rank relative to
    /// `base`: `rank'(A) = rank(A ∪ base) - rank(base)`.
    fn induced(&self, kept: GroundSubset, base: GroundSubset) -> Minor {
        let labels: Vec<usize> = kept.elements().collect();
        let m = labels.len();
        let base_rank = self.rank(base) as u8;
        let mut original = vec![0u64; 1 << m];
        let mut ranks = vec![0u8; 1 << m];
        for mask in 1..1usize << m {
            let low = mask.trailing_zeros() as usize;
            original[mask] = original[mask & (mask - 1)] | 1 << (labels[low] - 1);
        }
        for (mask, r) in ranks.iter_mut().enumerate() {
            *r = self.ranks[(original[mask] | base.mask()) as usize] - base_rank;
        }
        Minor {
            matroid: Matroid::from_parts(m, ranks, Provenance::Minor, None),
            labels,
        }
    }

    /// `M / S`, relabeled densely to `1..=n-|S|`.
    pub fn contract(&self, set: GroundSubset) -> Minor {
        let set = set.intersection(self.ground());
        self.induced(self.ground().difference(set), set)
    }

    /// `M \ S`, relabeled densely to `1..=n-|S|`.
    pub fn delete(&self, set: GroundSubset) -> Minor {
        let set = set.intersection(self.ground());
        self.induced(self.ground().difference(set), GroundSubset::EMPTY)
    }

    pub fn loops(&self) -> GroundSubset {
        GroundSubset::from_mask(
            (0..self.n)
                .filter(|&e| self.ranks[1 << e] == 0)
                .fold(0u64, |acc, e| acc | 1 << e),
        )
    }

    pub fn structure(&self) -> StructureReport {
        let loops = self.loops();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for e in self.ground().difference(loops).elements() {
            let parallel_to = classes.iter_mut().find(|class| {
                let mask = 1u64 << (class[0] - 1) | 1u64 << (e - 1);
                self.ranks[mask as usize] == 1
            });
            match parallel_to {
                Some(class) => class.push(e),
                None => classes.push(vec![e]),
            }
        }
        StructureReport {
            loops: loops.elements().collect(),
            rank_one_flats: classes.len(),
            parallel_classes: classes,
        }
    }

    /// Deletes loops and all but the first element of each parallel class.
    pub fn simplify(&self) -> Simplification {
        let report = self.structure();
        let representatives: Vec<usize> = report.parallel_classes.iter().map(|c| c[0]).collect();
        let kept = representatives
            .iter()
            .fold(GroundSubset::EMPTY, |acc, &e| acc.insert(e));
        let mut minor = self.induced(kept, GroundSubset::EMPTY).matroid;
        minor.provenance = Provenance::Simplification;
        Simplification {
            matroid: minor,
            degenerate: representatives.is_empty(),
            representatives,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(elements: &[usize]) -> GroundSubset {
        GroundSubset::from_elements(elements).unwrap()
    }

    #[test]
    fn contraction_examples() {
        let u23 = Matroid::uniform(2, 3).unwrap();
        let c = u23.contract(set(&[1]));
        assert_eq!(c.matroid.rank_table(), Matroid::uniform(1, 2).unwrap().rank_table());
        assert_eq!(c.labels, vec![2, 3]);

        let same = u23.contract(GroundSubset::EMPTY);
        assert_eq!(same.matroid.rank_table(), u23.rank_table());

        let all = u23.contract(u23.ground());
        assert_eq!(all.matroid.n(), 0);
        assert_eq!(all.matroid.full_rank(), 0);
    }

    #[test]
    fn contracting_a_non_loop_drops_rank_by_one() {
        let g = Matroid::graphic(4, &[(1, 2), (2, 3), (3, 1), (3, 4), (4, 4)]).unwrap();
        for e in g.ground().difference(g.loops()).elements() {
            let c = g.contract(set(&[e]));
            assert_eq!(c.matroid.full_rank() + 1, g.full_rank());
        }
    }

    #[test]
    fn structure_examples() {
        let s = Matroid::uniform(1, 2).unwrap().structure();
        assert_eq!((s.loops.clone(), s.parallel_classes.clone(), s.rank_one_flats), (vec![], vec![vec![1, 2]], 1));

        let s = Matroid::uniform(2, 3).unwrap().structure();
        assert_eq!(s.parallel_classes, vec![vec![1], vec![2], vec![3]]);
        assert_eq!(s.rank_one_flats, 3);

        let s = Matroid::uniform(0, 2).unwrap().structure();
        assert_eq!(s.loops, vec![1, 2]);
        assert!(s.parallel_classes.is_empty());
        assert_eq!(s.rank_one_flats, 0);
    }

    #[test]
    fn simplification_examples() {
        let s = Matroid::uniform(1, 2).unwrap().simplify();
        assert_eq!(s.matroid.rank_table(), Matroid::uniform(1, 1).unwrap().rank_table());
        assert!(!s.degenerate);

        let u23 = Matroid::uniform(2, 3).unwrap();
        assert_eq!(u23.simplify().matroid.rank_table(), u23.rank_table());

        // A loop next to a single coloop.
        let m = Matroid::graphic(2, &[(1, 1), (1, 2)]).unwrap();
        let s = m.simplify();
        assert_eq!(s.representatives, vec![2]);
        assert_eq!(s.matroid.rank_table(), Matroid::uniform(1, 1).unwrap().rank_table());

        let s = Matroid::uniform(0, 3).unwrap().simplify();
        assert!(s.degenerate);
        assert_eq!(s.matroid.n(), 0);
    }

    #[test]
    fn simplify_is_idempotent() {
        let m = Matroid::graphic(3, &[(1, 2), (1, 2), (2, 3), (3, 3), (1, 3), (2, 3)]).unwrap();
        let once = m.simplify().matroid;
        let twice = once.simplify().matroid;
        assert_eq!(once.rank_table(), twice.rank_table());
        assert_eq!(once.n(), 3);
    }
}
