//! Matroids given by a full rank table over bitmask-encoded subsets.
//!
//! Element `i` (1-based in the public API) lives at bit `i - 1`. Every
//! constructor materializes all `2^n` ranks up front, so `rank` is a table
//! lookup and all matroids are immutable afterwards.

mod build;
mod minor;
mod spec;
mod subset;

pub use minor::{Minor, Simplification, StructureReport};
pub use spec::MatroidSpec;
pub use subset::GroundSubset;
pub(crate) use subset::submasks;

use crate::error::{AxiomViolation, Error, Result};

/// Default bound on the ground-set size for anything that walks all subsets.
pub const DEFAULT_MAX_N: usize = 20;

/// Environment variable overriding [`DEFAULT_MAX_N`].
pub const MAX_N_ENV: &str = "POTTS_HODGE_MAX_N";

/// Current enumeration cap: `POTTS_HODGE_MAX_N` if set and valid, else 20.
pub fn enumeration_cap() -> usize {
    std::env::var(MAX_N_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .map(|v| v.min(63))
        .unwrap_or(DEFAULT_MAX_N)
}

pub(crate) fn check_cap(n: usize) -> Result<()> {
    let cap = enumeration_cap();
    if n > cap {
        Err(Error::ResourceLimit { n, cap })
    } else {
        Ok(())
    }
}

/// How a matroid was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Uniform,
    Graphic,
    Linear,
    RankTable,
    Minor,
    Simplification,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matroid {
    n: usize,
    ranks: Vec<u8>,
    provenance: Provenance,
    origin: Option<MatroidSpec>,
}

impl Matroid {
    pub(crate) fn from_parts(
        n: usize,
        ranks: Vec<u8>,
        provenance: Provenance,
        origin: Option<MatroidSpec>,
    ) -> Self {
        debug_assert_eq!(ranks.len(), 1usize << n);
        let m = Matroid {
            n,
            ranks,
            provenance,
            origin,
        };
        #[cfg(debug_assertions)]
        if n <= 10 {
            debug_assert_eq!(m.check_axioms(), Ok(()), "constructor produced an invalid rank table");
        }
        m
    }

    /// Size of the ground set.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn rank(&self, set: GroundSubset) -> usize {
        self.ranks[set.mask() as usize] as usize
    }

    #[inline]
    pub fn rank_mask(&self, mask: u64) -> usize {
        self.ranks[mask as usize] as usize
    }

    /// Rank of the whole ground set.
    pub fn full_rank(&self) -> usize {
        self.ranks[self.ranks.len() - 1] as usize
    }

    pub fn ground(&self) -> GroundSubset {
        GroundSubset::full(self.n)
    }

    /// Ranks indexed by subset bitmask.
    pub fn rank_table(&self) -> &[u8] {
        &self.ranks
    }

    /// The constructor input this matroid came from, or its rank table for
    /// derived matroids.
    pub fn to_spec(&self) -> MatroidSpec {
        match &self.origin {
            Some(spec) => spec.clone(),
            None => MatroidSpec::RankTable {
                n: self.n,
                ranks: self.ranks.iter().map(|&r| r as i64).collect(),
            },
        }
    }

    pub fn is_independent(&self, set: GroundSubset) -> bool {
        self.rank(set) == set.len()
    }

    /// `I_k`: the number of independent sets of each size `0..=n`.
    pub fn independent_set_counts(&self) -> Result<Vec<u64>> {
        check_cap(self.n)?;
        let mut counts = vec![0u64; self.n + 1];
        for (mask, &r) in self.ranks.iter().enumerate() {
            let size = (mask as u64).count_ones() as usize;
            if size == r as usize {
                counts[size] += 1;
            }
        }
        Ok(counts)
    }

    /// Exhaustively re-checks the rank axioms on this matroid's table.
    pub fn check_axioms(&self) -> std::result::Result<(), AxiomViolation> {
        let ranks: Vec<i64> = self.ranks.iter().map(|&r| r as i64).collect();
        build::validate_rank_axioms(self.n, &ranks)
    }
}
