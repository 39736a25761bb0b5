use num_traits::Zero;

use super::linalg::{nullspace, rank};
use super::{signature, EigenSignature, SymMatrix};
use crate::error::{Error, Result};
use crate::matroid::{check_cap, Matroid};
use crate::potts::{active_variables, CoeffSeq, EvalPoint, MultiIndex, WeightedPotts};
use crate::scalar::{Rational, Scalar};

fn degree_at_least_two<T: Scalar>(z: &WeightedPotts<'_, T>, alpha: &MultiIndex) -> Result<usize> {
    match z.derivative_degree(alpha) {
        Some(d) if d >= 2 => Ok(d),
        Some(d) => Err(Error::NotApplicable(format!(
            "derivative {alpha} has degree {d}, need at least 2"
        ))),
        None => Err(Error::NotApplicable(format!("derivative {alpha} vanishes identically"))),
    }
}

/// Largest entry of `|(d - 2) H_F(w) - sum_i w_i H_{d_i F}(w)|` for
/// `F = d^alpha Z_{M,c}` of degree `d >= 2`. Zero in exact arithmetic.
pub fn euler_hessian_residual<T: Scalar>(
    m: &Matroid,
    c: &CoeffSeq<T>,
    q: &T,
    alpha: &MultiIndex,
    w: &EvalPoint<T>,
) -> Result<T> {
    check_cap(m.n())?;
    let z = WeightedPotts::new(m, c, q)?;
    let d = degree_at_least_two(&z, alpha)?;
    let lhs = z.hessian(alpha, w)?.scale(&T::from_usize(d - 2));
    let mut rhs = SymMatrix::zeros(m.n() + 1);
    for (i, wi) in w.as_slice().iter().enumerate() {
        rhs = rhs.add(&z.hessian(&alpha.plus(i), w)?.scale(wi));
    }
    Ok(lhs.sub(&rhs).max_abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KernelStatus {
    Equal,
    NotEqual,
    /// Some `H_{d_i F}` does not have exactly one positive eigenvalue on the
    /// active variables, so equality is not predicted.
    HypothesisFailed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KernelReport {
    pub status: KernelStatus,
    /// Coordinates `F` depends on; every matrix below is restricted to them.
    pub active: Vec<usize>,
    pub derivative_signatures: Vec<(usize, EigenSignature)>,
    /// Active `i` whose `H_{d_i F}` fails the one-positive hypothesis.
    pub failing_derivatives: Vec<usize>,
    pub rank_hessian: usize,
    pub rank_stacked: usize,
    pub rank_joint: usize,
    /// `ker H_F` contains the common kernel of the `H_{d_i F}`.
    pub common_in_kernel: bool,
    /// `ker H_F` is contained in the common kernel.
    pub kernel_in_common: bool,
    pub kernels_equal: bool,
    /// Basis of `ker H_F`, embedded back into `n + 1` coordinates.
    pub kernel_basis: Vec<Vec<Rational>>,
    /// Basis of the common kernel, embedded back into `n + 1` coordinates.
    pub common_kernel_basis: Vec<Vec<Rational>>,
}

/// Compares `ker H_F(w)` with the common kernel of the `H_{d_i F}(w)` for
/// `F = d^alpha Z_{M,c}`, exactly, through ranks of the stacked matrices.
///
/// Variables already differentiated are dropped: `F` is constant in them,
/// so `H_F` has zero rows there and `d_i F = 0`, which would make the
/// one-positive hypothesis fail for a trivial reason.
pub fn kernel_identity_check(
    m: &Matroid,
    c: &CoeffSeq<Rational>,
    q: &Rational,
    alpha: &MultiIndex,
    w: &EvalPoint<Rational>,
) -> Result<KernelReport> {
    check_cap(m.n())?;
    let z = WeightedPotts::new(m, c, q)?;
    degree_at_least_two(&z, alpha)?;
    let n = m.n();
    let active = active_variables(n, alpha);
    let dim = active.len();

    let h_f = z.hessian_scaled(alpha, w)?.acc.principal(&active);
    let mut derivative_signatures = Vec::with_capacity(dim);
    let mut failing_derivatives = Vec::new();
    let mut stacked: Vec<Vec<Rational>> = Vec::with_capacity(dim * dim);
    for &i in &active {
        let h_i = z.hessian_scaled(&alpha.plus(i), w)?.acc.principal(&active);
        let sig = signature(&h_i)?;
        if sig.n_pos != 1 {
            failing_derivatives.push(i);
        }
        derivative_signatures.push((i, sig));
        stacked.extend(h_i.rows());
    }

    let rows_f = h_f.rows();
    let rank_hessian = rank(&rows_f, dim);
    let rank_stacked = rank(&stacked, dim);
    let mut joint = rows_f.clone();
    joint.extend(stacked.iter().cloned());
    let rank_joint = rank(&joint, dim);

    let common_in_kernel = rank_joint == rank_stacked;
    let kernel_in_common = rank_joint == rank_hessian;
    let kernels_equal = common_in_kernel && kernel_in_common;
    let status = if !failing_derivatives.is_empty() {
        KernelStatus::HypothesisFailed
    } else if kernels_equal {
        KernelStatus::Equal
    } else {
        KernelStatus::NotEqual
    };

    let embed = |basis: Vec<Vec<Rational>>| -> Vec<Vec<Rational>> {
        basis
            .into_iter()
            .map(|v| {
                let mut full = vec![Rational::zero(); n + 1];
                for (x, &i) in v.into_iter().zip(&active) {
                    full[i] = x;
                }
                full
            })
            .collect()
    };

    Ok(KernelReport {
        status,
        derivative_signatures,
        failing_derivatives,
        rank_hessian,
        rank_stacked,
        rank_joint,
        common_in_kernel,
        kernel_in_common,
        kernels_equal,
        kernel_basis: embed(nullspace(&rows_f, dim)),
        common_kernel_basis: embed(nullspace(&stacked, dim)),
        active,
    })
}
