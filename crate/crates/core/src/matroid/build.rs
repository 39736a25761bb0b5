use super::{check_cap, Matroid, MatroidSpec, Provenance};
use crate::error::{AxiomViolation, Error, Result};

/// Something whose rank grows one element at a time. `add` returns whether
/// the new element raised the rank.
trait IncrementalRank {
    type State: Clone;
    fn empty(&self) -> Self::State;
    fn add(&self, state: &mut Self::State, element: usize) -> bool;
}

/// Fills the rank table by a depth-first walk that adds elements in
/// increasing order, so each subset is reached exactly once.
fn fill_ranks<B: IncrementalRank>(n: usize, builder: &B) -> Vec<u8> {
    fn walk<B: IncrementalRank>(
        builder: &B,
        n: usize,
        start: usize,
        mask: usize,
        rank: u8,
        state: &B::State,
        ranks: &mut [u8],
    ) {
        for e in start..n {
            let mut next = state.clone();
            let rank = rank + builder.add(&mut next, e) as u8;
            let mask = mask | 1 << e;
            ranks[mask] = rank;
            walk(builder, n, e + 1, mask, rank, &next, ranks);
        }
    }
    let mut ranks = vec![0u8; 1 << n];
    walk(builder, n, 0, 0, 0, &builder.empty(), &mut ranks);
    ranks
}

struct Forest {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl IncrementalRank for Forest {
    type State = Vec<usize>;

    fn empty(&self) -> Vec<usize> {
        (0..self.vertices).collect()
    }

    fn add(&self, parent: &mut Vec<usize>, element: usize) -> bool {
        fn find(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        let (u, v) = self.edges[element];
        let (ru, rv) = (find(parent, u), find(parent, v));
        if ru == rv {
            false
        } else {
            parent[ru] = rv;
            true
        }
    }
}

struct Columns {
    prime: u64,
    columns: Vec<Vec<u64>>,
}

/// Row-echelon basis: (pivot row, normalized vector with a 1 at the pivot).
type Echelon = Vec<(usize, Vec<u64>)>;

impl IncrementalRank for Columns {
    type State = Echelon;

    fn empty(&self) -> Echelon {
        Vec::new()
    }

    fn add(&self, basis: &mut Echelon, element: usize) -> bool {
        let p = self.prime;
        let mut v = self.columns[element].clone();
        for (pivot, b) in basis.iter() {
            let f = v[*pivot];
            if f != 0 {
                for (x, y) in v.iter_mut().zip(b) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        match v.iter().position(|&x| x != 0) {
            None => false,
            Some(pivot) => {
                let inv = mod_pow(v[pivot], p - 2, p);
                for x in v.iter_mut() {
                    *x = *x * inv % p;
                }
                basis.push((pivot, v));
                true
            }
        }
    }
}

fn mod_pow(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1 % modulus;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl Matroid {
    /// The uniform matroid `U_{r,n}`: `rank(A) = min(|A|, r)`.
    pub fn uniform(rank: usize, n: usize) -> Result<Self> {
        if rank > n {
            return Err(Error::InvalidParameters(format!(
                "uniform matroid needs rank <= n, got r = {rank}, n = {n}"
            )));
        }
        check_cap(n)?;
        let ranks = (0..1u64 << n)
            .map(|mask| (mask.count_ones() as usize).min(rank) as u8)
            .collect();
        Ok(Matroid::from_parts(
            n,
            ranks,
            Provenance::Uniform,
            Some(MatroidSpec::Uniform { rank, n }),
        ))
    }

    /// Cycle matroid of a multigraph on vertices `1..=vertices`; edge `i` of
    /// the list is element `i + 1`. Self-loops and repeated edges are allowed.
    pub fn graphic(vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        for &(u, v) in edges {
            if u == 0 || v == 0 || u > vertices || v > vertices {
                return Err(Error::InvalidParameters(format!(
                    "edge ({u}, {v}) has an endpoint outside 1..={vertices}"
                )));
            }
        }
        let n = edges.len();
        check_cap(n)?;
        let forest = Forest {
            vertices,
            edges: edges.iter().map(|&(u, v)| (u - 1, v - 1)).collect(),
        };
        let ranks = fill_ranks(n, &forest);
        Ok(Matroid::from_parts(
            n,
            ranks,
            Provenance::Graphic,
            Some(MatroidSpec::Graphic {
                vertices,
                edges: edges.iter().map(|&(u, v)| [u, v]).collect(),
            }),
        ))
    }

    /// Column matroid of an `r x n` matrix over `GF(prime)`. Entries are
    /// reduced modulo `prime`, negatives included.
    pub fn linear(prime: u64, matrix: &[Vec<i64>]) -> Result<Self> {
        if !is_prime(prime) || prime > u32::MAX as u64 {
            return Err(Error::InvalidParameters(format!(
                "field order {prime} is not a supported prime"
            )));
        }
        let n = matrix.first().map_or(0, Vec::len);
        if let Some(row) = matrix.iter().find(|row| row.len() != n) {
            return Err(Error::InvalidParameters(format!(
                "ragged matrix: rows of length {n} and {}",
                row.len()
            )));
        }
        check_cap(n)?;
        let p = prime as i64;
        let columns = (0..n)
            .map(|j| {
                matrix
                    .iter()
                    .map(|row| row[j].rem_euclid(p) as u64)
                    .collect()
            })
            .collect();
        let ranks = fill_ranks(n, &Columns { prime, columns });
        let reduced = matrix
            .iter()
            .map(|row| row.iter().map(|x| x.rem_euclid(p)).collect())
            .collect();
        Ok(Matroid::from_parts(
            n,
            ranks,
            Provenance::Linear,
            Some(MatroidSpec::Linear {
                field: prime,
                matrix: reduced,
            }),
        ))
    }

    /// A matroid from an explicit rank table indexed by bitmask, validated
    /// against the rank axioms.
    pub fn from_rank_table(n: usize, ranks: &[i64]) -> Result<Self> {
        check_cap(n)?;
        if ranks.len() != 1usize << n {
            return Err(Error::InvalidParameters(format!(
                "rank table for n = {n} needs {} entries, got {}",
                1usize << n,
                ranks.len()
            )));
        }
        validate_rank_axioms(n, ranks).map_err(Error::NotAMatroid)?;
        Ok(Matroid::from_parts(
            n,
            ranks.iter().map(|&r| r as u8).collect(),
            Provenance::RankTable,
            Some(MatroidSpec::RankTable {
                n,
                ranks: ranks.to_vec(),
            }),
        ))
    }
}

/// Normalization, unit increase (which covers monotonicity) and local
/// submodularity `r(A+e) + r(A+f) >= r(A+e+f) + r(A)`. Together these are
/// equivalent to the full rank axioms.
pub(super) fn validate_rank_axioms(n: usize, ranks: &[i64]) -> Result<(), AxiomViolation> {
    if ranks[0] != 0 {
        return Err(AxiomViolation::EmptySetRank { rank: ranks[0] });
    }
    if let Some((set, &rank)) = ranks.iter().enumerate().find(|(_, &r)| r < 0) {
        return Err(AxiomViolation::NegativeRank {
            set: set as u64,
            rank,
        });
    }
    for a in 0..ranks.len() {
        for e in 0..n {
            if a >> e & 1 == 1 {
                continue;
            }
            let ae = a | 1 << e;
            let step = ranks[ae] - ranks[a];
            if !(0..=1).contains(&step) {
                return Err(AxiomViolation::UnitIncrease {
                    set: a as u64,
                    element: e + 1,
                    before: ranks[a],
                    after: ranks[ae],
                });
            }
        }
    }
    for a in 0..ranks.len() {
        for e in 0..n {
            if a >> e & 1 == 1 {
                continue;
            }
            for f in e + 1..n {
                if a >> f & 1 == 1 {
                    continue;
                }
                let (ae, af) = (a | 1 << e, a | 1 << f);
                if ranks[ae] + ranks[af] < ranks[ae | af] + ranks[a] {
                    return Err(AxiomViolation::Submodularity {
                        a: ae as u64,
                        b: af as u64,
                    });
                }
            }
        }
    }
    Ok(())
}
