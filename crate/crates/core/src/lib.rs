//! Matroids, multivariate Tutte polynomials and the one-positive-eigenvalue
//! property of their Hessians, checked in exact rational arithmetic.
//!
//! The crate is organised bottom-up: [`matroid`] builds and validates rank
//! functions, [`potts`] evaluates `Z_{M,c}` and its derivatives, [`spectral`]
//! decides inertia, and [`harness`] runs verification campaigns over a corpus.

pub mod error;
pub mod harness;
pub mod matroid;
pub mod potts;
pub mod rng;
pub mod scalar;
pub mod spectral;

pub use error::{AxiomViolation, Error, Result};
pub use matroid::{GroundSubset, Matroid, MatroidSpec};
pub use potts::{CoeffSeq, EvalPoint, MultiIndex};
pub use scalar::{Mode, Rational, Scalar};
pub use spectral::{EigenSignature, SymMatrix};
