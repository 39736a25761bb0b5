use crate::error::{Error, Result};

/// A subset of the ground set `{1, ..., n}` as a bitmask, element `i` at bit
/// `i - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GroundSubset(u64);

impl GroundSubset {
    pub const EMPTY: GroundSubset = GroundSubset(0);

    pub fn from_mask(mask: u64) -> Self {
        GroundSubset(mask)
    }

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            GroundSubset(u64::MAX)
        } else {
            GroundSubset((1u64 << n) - 1)
        }
    }

    /// Builds a subset from 1-based element labels.
    pub fn from_elements(elements: &[usize]) -> Result<Self> {
        elements.iter().try_fold(GroundSubset(0), |acc, &e| {
            if e == 0 || e > 64 {
                Err(Error::InvalidParameters(format!(
                    "element label {e} outside 1..=64"
                )))
            } else {
                Ok(GroundSubset(acc.0 | 1 << (e - 1)))
            }
        })
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// `element` is 1-based.
    pub fn contains(self, element: usize) -> bool {
        (1..=64).contains(&element) && self.0 >> (element - 1) & 1 == 1
    }

    pub fn insert(self, element: usize) -> Self {
        GroundSubset(self.0 | 1 << (element - 1))
    }

    pub fn union(self, other: Self) -> Self {
        GroundSubset(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        GroundSubset(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        GroundSubset(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// 1-based labels in increasing order.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(bit + 1)
            }
        })
    }
}

/// Iterates all submasks of `mask`, including `mask` itself and zero.
pub(crate) fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & mask) };
        Some(cur)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_are_one_based() {
        let s = GroundSubset::from_elements(&[1, 3]).unwrap();
        assert_eq!(s.mask(), 0b101);
        assert!(s.contains(3) && !s.contains(2));
        assert_eq!(s.elements().collect::<Vec<_>>(), vec![1, 3]);
        assert!(GroundSubset::from_elements(&[0]).is_err());
    }

    #[test]
    fn submask_walk_is_complete() {
        let mut all: Vec<u64> = submasks(0b1011).collect();
        all.sort();
        assert_eq!(all, vec![0, 1, 2, 3, 8, 9, 10, 11]);
        assert_eq!(submasks(0).collect::<Vec<_>>(), vec![0]);
    }
}
