//! Deterministic matroid corpora.
//!
//! A corpus spec is a `;`-separated list of families, each optionally
//! followed by `:key=value,...`:
//!
//! ```text
//! default
//! uniform:min_n=2,max_n=7
//! graphic:max_edges=5        graphic:K3
//! linear:count=50,max_n=8,seed=0
//! structured
//! ```

use std::collections::BTreeSet;

use rand::Rng;

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::rng::rng_for;

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub matroid: Matroid,
}

impl CorpusEntry {
    pub fn new(name: impl Into<String>, matroid: Matroid) -> Self {
        CorpusEntry {
            name: name.into(),
            matroid,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Uniform { min_n: usize, max_n: usize },
    Graphic { min_edges: usize, max_edges: usize },
    NamedGraph(String),
    Linear { count: usize, max_n: usize, seed: u64 },
    Structured,
}

impl Family {
    pub fn default_families() -> Vec<Family> {
        vec![
            Family::Uniform { min_n: 2, max_n: 7 },
            Family::Graphic { min_edges: 2, max_edges: 5 },
            Family::Linear { count: 50, max_n: 8, seed: 0 },
            Family::Structured,
        ]
    }
}

fn parse_options(family: &str, opts: &str) -> Result<Vec<(String, u64)>> {
    opts.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|kv| {
            let (k, v) = kv.split_once('=').ok_or_else(|| {
                Error::Config(format!("{family}: expected key=value, found {kv:?}"))
            })?;
            let v = v
                .trim()
                .parse::<u64>()
                .map_err(|e| Error::Config(format!("{family}: {k}={v}: {e}")))?;
            Ok((k.trim().to_string(), v))
        })
        .collect()
}

fn take(opts: &mut Vec<(String, u64)>, key: &str, default: u64) -> u64 {
    match opts.iter().position(|(k, _)| k == key) {
        Some(i) => opts.remove(i).1,
        None => default,
    }
}

/// Parses a corpus spec into families.
pub fn parse_corpus_spec(spec: &str) -> Result<Vec<Family>> {
    let mut out = Vec::new();
    for part in spec.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, rest) = part.split_once(':').unwrap_or((part, ""));
        let name = name.trim().to_ascii_lowercase();
        if name == "graphic" && !rest.contains('=') && !rest.trim().is_empty() {
            out.push(Family::NamedGraph(rest.trim().to_string()));
            continue;
        }
        let mut opts = parse_options(&name, rest)?;
        let family = match name.as_str() {
            "default" => {
                out.extend(Family::default_families());
                None
            }
            "uniform" => Some(Family::Uniform {
                min_n: take(&mut opts, "min_n", 2) as usize,
                max_n: take(&mut opts, "max_n", 7) as usize,
            }),
            "graphic" => Some(Family::Graphic {
                min_edges: take(&mut opts, "min_edges", 2) as usize,
                max_edges: take(&mut opts, "max_edges", 5) as usize,
            }),
            "linear" => Some(Family::Linear {
                count: take(&mut opts, "count", 50) as usize,
                max_n: take(&mut opts, "max_n", 8) as usize,
                seed: take(&mut opts, "seed", 0),
            }),
            "structured" => Some(Family::Structured),
            other => return Err(Error::Config(format!("unknown corpus family {other:?}"))),
        };
        if let Some((k, _)) = opts.first() {
            return Err(Error::Config(format!("{name}: unknown option {k:?}")));
        }
        out.extend(family);
    }
    if out.is_empty() {
        return Err(Error::Config("empty corpus spec".into()));
    }
    Ok(out)
}

/// Builds the corpus described by `spec`.
pub fn generate_corpus(spec: &str) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    for family in parse_corpus_spec(spec)? {
        out.extend(build_family(&family)?);
    }
    Ok(out)
}

pub fn build_family(family: &Family) -> Result<Vec<CorpusEntry>> {
    match family {
        Family::Uniform { min_n, max_n } => uniform_family(*min_n, *max_n),
        Family::Graphic { min_edges, max_edges } => graphic_family(*min_edges, *max_edges),
        Family::NamedGraph(name) => named_graph(name).map(|e| vec![e]),
        Family::Linear { count, max_n, seed } => linear_family(*count, *max_n, *seed),
        Family::Structured => structured_family(),
    }
}

fn uniform_family(min_n: usize, max_n: usize) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    for n in min_n..=max_n {
        for r in 0..=n {
            out.push(CorpusEntry::new(format!("U({r},{n})"), Matroid::uniform(r, n)?));
        }
    }
    Ok(out)
}

fn graph_name(edges: &[(usize, usize)]) -> String {
    let parts: Vec<String> = edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
    format!("graph[{}]", parts.join(","))
}

fn is_connected(vertices: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; vertices + 1];
    let mut stack = vec![1];
    seen[1] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            let other = if a == v { b } else if b == v { a } else { continue };
            if !seen[other] {
                seen[other] = true;
                stack.push(other);
            }
        }
    }
    seen[1..].iter().all(|&s| s)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn canonical(edges: &[(usize, usize)], perms: &[Vec<usize>]) -> Vec<(usize, usize)> {
    perms
        .iter()
        .map(|p| {
            let mut e: Vec<(usize, usize)> = edges
                .iter()
                .map(|&(u, v)| {
                    let (a, b) = (p[u - 1] + 1, p[v - 1] + 1);
                    (a.min(b), a.max(b))
                })
                .collect();
            e.sort_unstable();
            e
        })
        .min()
        .unwrap_or_default()
}

/// Connected simple graphs with `min_edges..=max_edges` edges, one per
/// isomorphism class, on vertices `1..=v` with no isolated vertices.
fn graphic_family(min_edges: usize, max_edges: usize) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    for v in 2..=max_edges + 1 {
        let pairs: Vec<(usize, usize)> = (1..=v)
            .flat_map(|a| (a + 1..=v).map(move |b| (a, b)))
            .collect();
        if pairs.len() > 24 {
            return Err(Error::ResourceLimit { n: pairs.len(), cap: 24 });
        }
        let perms = permutations(v);
        let mut seen = BTreeSet::new();
        for mask in 0u32..1 << pairs.len() {
            let e = mask.count_ones() as usize;
            if e < min_edges.max(v - 1) || e > max_edges {
                continue;
            }
            let edges: Vec<(usize, usize)> = (0..pairs.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| pairs[i])
                .collect();
            if !is_connected(v, &edges) {
                continue;
            }
            let canon = canonical(&edges, &perms);
            if seen.insert(canon.clone()) {
                out.push((e, v, canon));
            }
        }
    }
    out.sort();
    out.into_iter()
        .map(|(_, v, edges)| Ok(CorpusEntry::new(graph_name(&edges), Matroid::graphic(v, &edges)?)))
        .collect()
}

fn named_graph(name: &str) -> Result<CorpusEntry> {
    let upper = name.to_ascii_uppercase();
    let (kind, size) = upper.split_at(1);
    let k: usize = size
        .parse()
        .map_err(|_| Error::Config(format!("unknown graph {name:?}; use Kn or Cn")))?;
    let edges: Vec<(usize, usize)> = match kind {
        "K" if k >= 2 => (1..=k).flat_map(|a| (a + 1..=k).map(move |b| (a, b))).collect(),
        "C" if k >= 3 => (1..=k).map(|a| (a, a % k + 1)).map(|(a, b)| (a.min(b), a.max(b))).collect(),
        _ => return Err(Error::Config(format!("unknown graph {name:?}; use Kn (n >= 2) or Cn (n >= 3)"))),
    };
    Ok(CorpusEntry::new(upper, Matroid::graphic(k, &edges)?))
}

/// Seeded column matroids over `GF(2)` and `GF(3)` with `2..=max_n` columns.
fn linear_family(count: usize, max_n: usize, seed: u64) -> Result<Vec<CorpusEntry>> {
    if max_n < 2 {
        return Err(Error::Config("linear: max_n must be at least 2".into()));
    }
    (0..count)
        .map(|i| {
            let mut rng = rng_for(seed, &[0x11ea, i as u64]);
            let field = if rng.gen_bool(0.5) { 2 } else { 3 };
            let n = rng.gen_range(2..=max_n);
            let rows = rng.gen_range(1..=n.min(4));
            let matrix: Vec<Vec<i64>> = (0..rows)
                .map(|_| (0..n).map(|_| rng.gen_range(0..field as i64)).collect())
                .collect();
            Ok(CorpusEntry::new(
                format!("GF({field})#{i:02}"),
                Matroid::linear(field, &matrix)?,
            ))
        })
        .collect()
}

/// Small matroids with loops and nontrivial parallel classes.
fn structured_family() -> Result<Vec<CorpusEntry>> {
    let cases: [(&str, Vec<Vec<i64>>); 7] = [
        ("two-parallel-pairs", vec![vec![1, 1, 0, 0], vec![0, 0, 1, 1]]),
        (
            "three-parallel-pairs",
            vec![vec![1, 1, 0, 0, 1, 1], vec![0, 0, 1, 1, 1, 1]],
        ),
        ("loop-plus-triangle", vec![vec![0, 1, 0, 1], vec![0, 0, 1, 1]]),
        (
            "two-loops-and-classes",
            vec![vec![0, 0, 1, 1, 1, 0], vec![0, 0, 0, 0, 0, 1]],
        ),
        (
            "triple-class-plus-free",
            vec![vec![1, 1, 1, 0, 0], vec![0, 0, 0, 1, 0], vec![0, 0, 0, 0, 1]],
        ),
        ("loop-and-parallel-line", vec![vec![0, 1, 2, 1, 1], vec![0, 0, 0, 1, 2]]),
        ("rank-one-with-loop", vec![vec![1, 2, 0, 1]]),
    ];
    let mut out: Vec<CorpusEntry> = cases
        .into_iter()
        .map(|(name, m)| Ok(CorpusEntry::new(name, Matroid::linear(3, &m)?)))
        .collect::<Result<_>>()?;
    out.push(CorpusEntry::new(
        "doubled-triangle",
        Matroid::graphic(3, &[(1, 2), (1, 2), (2, 3), (2, 3), (1, 3)])?,
    ));
    Ok(out)
}
