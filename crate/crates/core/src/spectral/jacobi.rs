//! Cyclic Jacobi eigendecomposition for real symmetric matrices.

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;

/// Eigenvalues with matching eigenvector columns, unsorted.
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    /// Column j is the eigenvector for eigenvalues[j].
    pub vectors: DenseMatrix,
}

/// Diagonalizes a symmetric matrix by cyclic plane rotations.
///
/// Sweeps rotate every off-diagonal pair (p, q) in order until the
/// off-diagonal Frobenius norm drops below `off_tol`. Rotations preserve
/// the orthonormality of the accumulated eigenvector matrix.
pub fn jacobi_eigen(
    matrix: &DenseMatrix,
    off_tol: f64,
    max_sweeps: usize,
) -> Result<EigenDecomposition> {
    let n = matrix.n();
    let mut a = matrix.clone();
    let mut v = DenseMatrix::zeros(n);
    for i in 0..n {
        v.set(i, i, 1.0);
    }

    for _ in 0..max_sweeps {
        if a.off_diagonal_norm() < off_tol {
            let eigenvalues = (0..n).map(|i| a.get(i, i)).collect();
            return Ok(EigenDecomposition {
                eigenvalues,
                vectors: v,
            });
        }
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    if a.off_diagonal_norm() < off_tol {
        let eigenvalues = (0..n).map(|i| a.get(i, i)).collect();
        return Ok(EigenDecomposition {
            eigenvalues,
            vectors: v,
        });
    }
    Err(Error::NonConvergence(max_sweeps))
}

/// One Givens rotation annihilating a[p][q], applied as A <- Jᵀ A J and
/// accumulated into V <- V J.
fn rotate(a: &mut DenseMatrix, v: &mut DenseMatrix, p: usize, q: usize) {
    let apq = a.get(p, q);
    if apq == 0.0 {
        return;
    }
    let theta = (a.get(q, q) - a.get(p, p)) / (2.0 * apq);
    let t = if theta.abs() > 1e150 {
        // tan would underflow the quadratic; fall back to the series limit
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let n = a.n();
    // columns p and q
    for r in 0..n {
        let arp = a.get(r, p);
        let arq = a.get(r, q);
        a.set(r, p, c * arp - s * arq);
        a.set(r, q, s * arp + c * arq);
    }
    // rows p and q
    for r in 0..n {
        let apr = a.get(p, r);
        let aqr = a.get(q, r);
        a.set(p, r, c * apr - s * aqr);
        a.set(q, r, s * apr + c * aqr);
    }
    // exact zero where the rotation was aimed
    a.set(p, q, 0.0);
    a.set(q, p, 0.0);
    for r in 0..n {
        let vrp = v.get(r, p);
        let vrq = v.get(r, q);
        v.set(r, p, c * vrp - s * vrq);
        v.set(r, q, s * vrp + c * vrq);
    }
}
