use thiserror::Error;

/// Errors raised by matroid construction, polynomial evaluation and the
/// spectral routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("not a matroid: {0}")]
    NotAMatroid(AxiomViolation),

    #[error("ground set of size {n} exceeds the enumeration cap {cap}")]
    ResourceLimit { n: usize, cap: usize },

    #[error("signature is indeterminate in floating point: an eigenvalue lies within {tol:e} of zero")]
    IndeterminateSignature { tol: f64, eigenvalues: Vec<f64> },

    #[error("sampling failure: {0}")]
    SamplingFailure(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),

    #[error("impossible state: {0}")]
    ImpossibleState(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),
}

/// A witness that a rank table breaks one of the matroid rank axioms.
/// Subsets are bitmasks (element `i` at bit `i - 1`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    EmptySetRank { rank: i64 },
    NegativeRank { set: u64, rank: i64 },
    UnitIncrease { set: u64, element: usize, before: i64, after: i64 },
    Submodularity { a: u64, b: u64 },
}

impl std::fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AxiomViolation::EmptySetRank { rank } => write!(f, "rank of the empty set is {rank}"),
            AxiomViolation::NegativeRank { set, rank } => {
                write!(f, "rank of subset {set:#b} is negative ({rank})")
            }
            AxiomViolation::UnitIncrease {
                set,
                element,
                before,
                after,
            } => write!(
                f,
                "adding element {element} to subset {set:#b} changes the rank from {before} to {after}"
            ),
            AxiomViolation::Submodularity { a, b } => {
                write!(f, "submodularity fails for A = {a:#b}, B = {b:#b}")
            }
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
