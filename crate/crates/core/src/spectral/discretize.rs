//! Rotation-and-round label assignment for spectral embeddings.
//!
//! Alternates (a) assigning each row to the largest column of X·R with
//! (b) refitting R as the orthogonal Procrustes solution against the
//! one-hot indicator of the assignments, until the assignment stops
//! changing. The starting rotation is built from anchor rows chosen
//! farthest-point style, so no randomness is involved anywhere.

use crate::community::Partition;

use super::jacobi::jacobi_eigen;
use super::kmeans::kmeans_labels;
use super::SpectralEmbedding;
use crate::matrix::DenseMatrix;

const MAX_ITERS: usize = 100;
const RANK_TOL: f64 = 1e-9;

/// Result of discretization; `fell_back` reports a degenerate embedding
/// that was routed through k-means instead.
#[derive(Debug, Clone)]
pub struct DiscretizeOutcome {
    pub partition: Partition,
    pub fell_back: bool,
}

/// Converts an embedding into cluster labels by iterative rotation.
///
/// A rank-deficient rotation fit (degenerate embedding) falls back to
/// `kmeans_labels` with seed 0 and flags the outcome.
pub fn discretize_labels(e: &SpectralEmbedding) -> DiscretizeOutcome {
    let n = e.node_count();
    let k = e.column_count();
    assert!(k >= 1, "embedding must have at least one column");

    let fallback = |_: ()| DiscretizeOutcome {
        partition: kmeans_labels(e, k, 0).expect("k validated by the embedding"),
        fell_back: true,
    };

    let mut rotation = initial_rotation(e);
    let mut assignment: Vec<usize> = vec![0; n];
    for iteration in 0..MAX_ITERS {
        let next: Vec<usize> = (0..n)
            .map(|i| argmax_rotated(e.row(i), &rotation))
            .collect();
        if iteration > 0 && next == assignment {
            break;
        }
        assignment = next;

        // M = Xᵀ·Y with Y the one-hot indicator of the assignment
        let mut m = DenseMatrix::zeros(k);
        for (i, &c) in assignment.iter().enumerate() {
            for (a, &x) in e.row(i).iter().enumerate() {
                m.set(a, c, m.get(a, c) + x);
            }
        }
        match polar_rotation(&m) {
            Some(r) => rotation = r,
            None => return fallback(()),
        }
    }

    DiscretizeOutcome {
        partition: Partition::from_assignment(&assignment),
        fell_back: false,
    }
}

/// Seeds the rotation with k anchor rows of the embedding: the max-norm
/// row first, then rows least aligned with the anchors picked so far
/// (smallest index on ties). Starting from spread-out anchors keeps the
/// first assignment from collapsing onto one column; the Procrustes step
/// replaces this with a proper orthogonal rotation immediately.
fn initial_rotation(e: &SpectralEmbedding) -> DenseMatrix {
    let n = e.node_count();
    let k = e.column_count();
    let mut rotation = DenseMatrix::zeros(k);

    let mut first = 0;
    let mut best_norm = f64::NEG_INFINITY;
    for i in 0..n {
        let norm: f64 = e.row(i).iter().map(|v| v * v).sum();
        if norm > best_norm {
            best_norm = norm;
            first = i;
        }
    }
    for (a, &v) in e.row(first).iter().enumerate() {
        rotation.set(a, 0, v);
    }

    let mut alignment = vec![0.0f64; n];
    for j in 1..k {
        for (i, acc) in alignment.iter_mut().enumerate() {
            let dot: f64 = e
                .row(i)
                .iter()
                .enumerate()
                .map(|(a, &v)| v * rotation.get(a, j - 1))
                .sum();
            *acc += dot.abs();
        }
        let mut anchor = 0;
        let mut least = f64::INFINITY;
        for (i, &c) in alignment.iter().enumerate() {
            if c < least {
                least = c;
                anchor = i;
            }
        }
        for (a, &v) in e.row(anchor).iter().enumerate() {
            rotation.set(a, j, v);
        }
    }
    rotation
}

/// Index of the largest entry of row·R, smallest column on ties.
fn argmax_rotated(row: &[f64], rotation: &DenseMatrix) -> usize {
    let k = rotation.n();
    let mut best = 0;
    let mut best_v = f64::NEG_INFINITY;
    for j in 0..k {
        let mut v = 0.0;
        for (a, &x) in row.iter().enumerate() {
            v += x * rotation.get(a, j);
        }
        if v > best_v {
            best_v = v;
            best = j;
        }
    }
    best
}

/// Orthogonal Procrustes solution R = U·Vᵀ for M = U·Σ·Vᵀ, computed as the
/// polar factor M·(MᵀM)^(-1/2). Returns None when M is rank-deficient.
fn polar_rotation(m: &DenseMatrix) -> Option<DenseMatrix> {
    let k = m.n();
    let mut mtm = DenseMatrix::zeros(k);
    for a in 0..k {
        for b in 0..k {
            let mut v = 0.0;
            for r in 0..k {
                v += m.get(r, a) * m.get(r, b);
            }
            mtm.set(a, b, v);
        }
    }
    let eig = jacobi_eigen(&mtm, 1e-12, 100).ok()?;
    let sigma: Vec<f64> = eig.eigenvalues.iter().map(|&l| l.max(0.0).sqrt()).collect();
    let sigma_max = sigma.iter().cloned().fold(0.0f64, f64::max);
    if sigma_max <= 0.0 || sigma.iter().any(|&s| s < RANK_TOL * sigma_max) {
        return None;
    }
    // (MᵀM)^(-1/2) = V·Σ⁻¹·Vᵀ, then R = M · that
    let v = &eig.vectors;
    let mut inv_sqrt = DenseMatrix::zeros(k);
    for a in 0..k {
        for b in 0..k {
            let mut acc = 0.0;
            for (j, &s) in sigma.iter().enumerate() {
                acc += v.get(a, j) * v.get(b, j) / s;
            }
            inv_sqrt.set(a, b, acc);
        }
    }
    let mut r = DenseMatrix::zeros(k);
    for a in 0..k {
        for b in 0..k {
            let mut acc = 0.0;
            for j in 0..k {
                acc += m.get(a, j) * inv_sqrt.get(j, b);
            }
            r.set(a, b, acc);
        }
    }
    Some(r)
}
