//! Evaluation of the homogeneous multivariate Tutte polynomial
//!
//! ```text
//! Z_{M,c}(q, w) = sum_A c_{|A|} q^{-rk(A)} w_0^{n-|A|} prod_{i in A} w_i
//! ```
//!
//! its partial derivatives and Hessians, the rank strata `Z^k_M`, and the
//! independent-set generating polynomials `f^m_M`. With `c` all ones this is
//! the homogeneous `Z_M`; setting `w_0 = 1` recovers the Potts partition
//! function, which is left to callers.

mod eval;
mod kernel;
mod types;

pub use eval::{
    active_variables, elementary_symmetric, f_all, f_limit_residual, f_m_eval, hessian, is_identically_zero,
    partial_eval, z_weighted_eval, zk_all, zk_eval,
};
pub use kernel::{Scaled, WeightedPotts};
pub use types::{CoeffSeq, EvalPoint, MultiIndex};
