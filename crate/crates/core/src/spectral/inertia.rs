use nalgebra::DMatrix;
use num_traits::{Signed, Zero};

use super::{EigenSignature, SymMatrix};
use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Relative zero threshold for float eigenvalues: `tol = 1e-9 * max|a_ij|`.
pub const DEFAULT_RELATIVE_TOL: f64 = 1e-9;

/// Exact inertia by symmetric congruence reduction.
///
/// A nonzero diagonal pivot contributes its sign. When the remaining
/// diagonal is identically zero but some `a_ij != 0`, the 2x2 block
/// `[[0, b], [b, 0]]` contributes one positive and one negative eigenvalue.
/// Sylvester's law makes the counts independent of the pivot order.
pub fn congruence_inertia(m: &SymMatrix<Rational>) -> EigenSignature {
    let dim = m.dim();
    let mut a = m.rows();
    let mut active: Vec<usize> = (0..dim).collect();
    let (mut pos, mut neg) = (0, 0);

    while !active.is_empty() {
        if let Some(slot) = active.iter().position(|&k| !a[k][k].is_zero()) {
            let k = active.swap_remove(slot);
            let pivot = a[k][k].clone();
            if pivot.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            for (x, &r) in active.iter().enumerate() {
                if a[r][k].is_zero() {
                    continue;
                }
                let factor = &a[r][k] / &pivot;
                for &s in &active[x..] {
                    if a[k][s].is_zero() {
                        continue;
                    }
                    let v = &a[r][s] - &factor * &a[k][s];
                    a[s][r] = v.clone();
                    a[r][s] = v;
                }
            }
            continue;
        }

        let pair = active.iter().enumerate().find_map(|(x, &i)| {
            active[x + 1..]
                .iter()
                .find(|&&j| !a[i][j].is_zero())
                .map(|&j| (i, j))
        });
        let Some((i, j)) = pair else { break };
        pos += 1;
        neg += 1;
        active.retain(|&k| k != i && k != j);
        let b = a[i][j].clone();
        for (x, &r) in active.iter().enumerate() {
            for &s in &active[x..] {
                let cross = &a[r][i] * &a[j][s] + &a[r][j] * &a[i][s];
                if cross.is_zero() {
                    continue;
                }
                let v = &a[r][s] - cross / &b;
                a[s][r] = v.clone();
                a[r][s] = v;
            }
        }
    }
    EigenSignature::new(pos, neg, dim - pos - neg)
}

/// Float inertia with eigenvalues for diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatSignature {
    pub signature: EigenSignature,
    /// Sorted in decreasing order.
    pub eigenvalues: Vec<f64>,
    pub tol: f64,
}

/// Eigenvalues of a symmetric float matrix in decreasing order.
pub fn float_eigenvalues(m: &SymMatrix<f64>) -> Vec<f64> {
    let dim = m.dim();
    if dim == 0 {
        return Vec::new();
    }
    let mat = DMatrix::from_row_slice(dim, dim, m.entries());
    let mut eig: Vec<f64> = mat.symmetric_eigenvalues().iter().copied().collect();
    eig.sort_by(|a, b| b.total_cmp(a));
    eig
}

/// Unit eigenvector of the largest eigenvalue.
pub(crate) fn top_eigenvector(m: &SymMatrix<f64>) -> Vec<f64> {
    let dim = m.dim();
    let eig = DMatrix::from_row_slice(dim, dim, m.entries()).symmetric_eigen();
    let top = (0..dim)
        .max_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]))
        .unwrap_or(0);
    eig.eigenvectors.column(top).iter().copied().collect()
}

/// Float inertia. An eigenvalue within `relative_tol * max|a_ij|` of zero
/// makes the answer indeterminate; this never guesses.
pub fn float_inertia(m: &SymMatrix<f64>, relative_tol: f64) -> Result<FloatSignature> {
    let eigenvalues = float_eigenvalues(m);
    let max_abs = m.entries().iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    if max_abs == 0.0 {
        return Ok(FloatSignature {
            signature: EigenSignature::new(0, 0, m.dim()),
            eigenvalues,
            tol: 0.0,
        });
    }
    let tol = relative_tol * max_abs;
    if eigenvalues.iter().any(|l| l.abs() <= tol || !l.is_finite()) {
        return Err(Error::IndeterminateSignature { tol, eigenvalues });
    }
    let n_pos = eigenvalues.iter().filter(|&&l| l > 0.0).count();
    Ok(FloatSignature {
        signature: EigenSignature::new(n_pos, m.dim() - n_pos, 0),
        eigenvalues,
        tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn mat(rows: &[&[i64]]) -> SymMatrix<Rational> {
        SymMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_i64(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn signature_examples() {
        assert_eq!(
            congruence_inertia(&SymMatrix::identity(3)),
            EigenSignature::new(3, 0, 0)
        );
        for n in 1..7 {
            let j = SymMatrix::<Rational>::all_ones_off_diagonal(n + 1);
            assert_eq!(congruence_inertia(&j), EigenSignature::new(1, n, 0));
        }
        let h = mat(&[&[2, 1, 1], &[1, 0, 1], &[1, 1, 0]]);
        assert_eq!(congruence_inertia(&h), EigenSignature::new(1, 1, 1));
    }

    #[test]
    fn zero_diagonal_block_pivot() {
        let h = mat(&[&[0, 3], &[3, 0]]);
        assert_eq!(congruence_inertia(&h), EigenSignature::new(1, 1, 0));
        let z = SymMatrix::<Rational>::zeros(2);
        assert_eq!(congruence_inertia(&z), EigenSignature::new(0, 0, 2));
        let empty = SymMatrix::<Rational>::zeros(0);
        assert_eq!(congruence_inertia(&empty), EigenSignature::new(0, 0, 0));
    }

    #[test]
    fn mixed_pivots() {
        // diag(1, -2) glued to a hyperbolic plane.
        let h = mat(&[&[1, 0, 0, 0], &[0, -2, 0, 0], &[0, 0, 0, 5], &[0, 0, 5, 0]]);
        assert_eq!(congruence_inertia(&h), EigenSignature::new(2, 2, 0));
        let g = mat(&[&[1, 1, 0, 2], &[1, -1, 3, 0], &[0, 3, 0, 5], &[2, 0, 5, 0]]);
        let f = float_inertia(&g.to_f64(), DEFAULT_RELATIVE_TOL).unwrap();
        assert_eq!(congruence_inertia(&g), f.signature);
    }

    #[test]
    fn float_path_flags_near_zero_eigenvalues() {
        let h = SymMatrix::from_rows(vec![vec![2.0, 1.0, 1.0], vec![1.0, 0.0, 1.0], vec![1.0, 1.0, 0.0]])
            .unwrap();
        match float_inertia(&h, DEFAULT_RELATIVE_TOL) {
            Err(Error::IndeterminateSignature { eigenvalues, .. }) => {
                assert!((eigenvalues[0] - 3.0).abs() < 1e-12);
                assert!(eigenvalues[1].abs() < 1e-12);
                assert!((eigenvalues[2] + 1.0).abs() < 1e-12);
            }
            other => panic!("expected indeterminate, got {other:?}"),
        }
        let j = SymMatrix::<f64>::all_ones_off_diagonal(4);
        assert_eq!(
            float_inertia(&j, DEFAULT_RELATIVE_TOL).unwrap().signature,
            EigenSignature::new(1, 3, 0)
        );
    }
}
