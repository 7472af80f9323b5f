//! Spectral clustering: unnormalized Laplacian, smallest eigenpairs, and
//! label assignment by k-means or discretization.

mod discretize;
mod jacobi;
mod kmeans;

pub use discretize::{discretize_labels, DiscretizeOutcome};
pub use jacobi::{jacobi_eigen, EigenDecomposition};
pub use kmeans::kmeans_labels;

use crate::community::Partition;
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::matrix::DenseMatrix;

/// Off-diagonal Frobenius threshold for the Jacobi sweeps.
pub const JACOBI_OFF_TOL: f64 = 1e-10;
/// Sweep cap for the Jacobi eigensolver.
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Above this many nodes the dense eigensolve stops being a desk-scale run.
pub const DESK_SCALE_NODES: usize = 3_000;

/// Unnormalized graph Laplacian L = D - W.
#[derive(Debug, Clone)]
pub struct Laplacian {
    pub matrix: DenseMatrix,
}

/// Rows of the k smallest eigenvectors, used as per-node feature vectors.
///
/// Columns are orthonormal; eigenvalues ascend; each eigenvector's first
/// entry of meaningful size is positive, fixing the sign deterministically.
#[derive(Debug, Clone)]
pub struct SpectralEmbedding {
    pub eigenvalues: Vec<f64>,
    /// Row-major nodes × columns values.
    pub vectors: Vec<f64>,
    pub nodes: usize,
    pub columns: usize,
}

impl SpectralEmbedding {
    pub fn node_count(&self) -> usize {
        self.nodes
    }

    pub fn column_count(&self) -> usize {
        self.columns
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.vectors[i * self.columns..(i + 1) * self.columns]
    }
}

/// Label assignment strategy after the eigensolve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabelMode {
    Kmeans,
    Discretize,
}

/// L = D - W: weighted degrees on the diagonal, negated weights off it.
/// Row sums are zero by construction.
pub fn laplacian(g: &WeightedGraph) -> Result<Laplacian> {
    let n = g.node_count();
    let mut matrix = g.to_dense_adjacency()?;
    for i in 0..n {
        let degree = g.weighted_degree(i)?;
        for j in 0..n {
            let w = matrix.get(i, j);
            if w != 0.0 {
                matrix.set(i, j, -w);
            }
        }
        matrix.set(i, i, degree);
    }
    Ok(Laplacian { matrix })
}

/// The k smallest eigenvalues of the Laplacian with their eigenvectors.
pub fn smallest_eigenpairs(l: &Laplacian, k: usize) -> Result<SpectralEmbedding> {
    let n = l.matrix.n();
    if k == 0 || k > n {
        return Err(Error::InvalidK { k, n });
    }
    let eig = jacobi_eigen(&l.matrix, JACOBI_OFF_TOL, JACOBI_MAX_SWEEPS)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[a]
            .total_cmp(&eig.eigenvalues[b])
            .then(a.cmp(&b))
    });

    let mut eigenvalues = Vec::with_capacity(k);
    let mut vectors = vec![0.0; n * k];
    for (col, &src) in order.iter().take(k).enumerate() {
        eigenvalues.push(eig.eigenvalues[src]);
        // sign convention: first entry of meaningful magnitude positive
        let flip = (0..n)
            .map(|r| eig.vectors.get(r, src))
            .find(|v| v.abs() > 1e-12)
            .map_or(1.0, |v| if v < 0.0 { -1.0 } else { 1.0 });
        for r in 0..n {
            vectors[r * k + col] = flip * eig.vectors.get(r, src);
        }
    }
    Ok(SpectralEmbedding {
        eigenvalues,
        vectors,
        nodes: n,
        columns: k,
    })
}

/// Full pipeline: Laplacian, k smallest eigenpairs, label assignment.
pub fn spectral_cluster(
    g: &WeightedGraph,
    k: usize,
    mode: LabelMode,
    seed: u64,
) -> Result<Partition> {
    let l = laplacian(g)?;
    let embedding = smallest_eigenpairs(&l, k)?;
    match mode {
        LabelMode::Kmeans => kmeans_labels(&embedding, k, seed),
        LabelMode::Discretize => Ok(discretize_labels(&embedding).partition),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing;

    #[test]
    fn laplacian_single_edge() {
        let g = WeightedGraph::from_labeled_edges(&[("a", "b", 1.0)]).unwrap();
        let l = laplacian(&g).unwrap();
        assert_eq!(
            l.matrix,
            DenseMatrix::from_rows(&[vec![1.0, -1.0], vec![-1.0, 1.0]])
        );
    }

    #[test]
    fn laplacian_edgeless_is_zero_matrix() {
        let g = WeightedGraph::new(vec!["a", "b", "c"], vec![]).unwrap();
        let l = laplacian(&g).unwrap();
        assert_eq!(l.matrix, DenseMatrix::zeros(3));
    }

    #[test]
    fn laplacian_row_sums_vanish() {
        let g = testing::random_weighted_graph(12, 0.5, 5, true);
        let l = laplacian(&g).unwrap();
        for i in 0..12 {
            assert!(l.matrix.row_sum(i).abs() < 1e-12);
        }
    }

    #[test]
    fn path_laplacian_spectrum() {
        // characteristic polynomial of the P3 Laplacian gives {0, 1, 3}
        let l = laplacian(&testing::path_graph(3)).unwrap();
        let e = smallest_eigenpairs(&l, 3).unwrap();
        let expected = [0.0, 1.0, 3.0];
        for (got, want) in e.eigenvalues.iter().zip(expected) {
            assert!((got - want).abs() < 1e-9, "{got} vs {want}");
        }
    }

    #[test]
    fn k2_spectrum() {
        let l = laplacian(&testing::complete_graph(2)).unwrap();
        let e = smallest_eigenpairs(&l, 2).unwrap();
        assert!(e.eigenvalues[0].abs() < 1e-10);
        assert!((e.eigenvalues[1] - 2.0).abs() < 1e-10);
    }

    #[test]
    fn zero_eigenvalue_multiplicity_counts_components() {
        let g = testing::disjoint_cliques(&[3, 3]);
        let l = laplacian(&g).unwrap();
        let e = smallest_eigenpairs(&l, 6).unwrap();
        let zeros = e.eigenvalues.iter().filter(|v| v.abs() < 1e-9).count();
        assert_eq!(zeros, 2);
    }

    #[test]
    fn smallest_eigenvector_is_constant_up_to_sign() {
        let g = testing::complete_graph(4);
        let l = laplacian(&g).unwrap();
        let e = smallest_eigenpairs(&l, 1).unwrap();
        let first = e.row(0)[0];
        assert!(first > 0.0, "sign convention fixes the constant positive");
        for i in 1..4 {
            assert!((e.row(i)[0] - first).abs() < 1e-9);
        }
    }

    #[test]
    fn embedding_residuals_and_orthonormality() {
        let g = testing::random_graph(10, 0.4, 21);
        let l = laplacian(&g).unwrap();
        let e = smallest_eigenpairs(&l, 4).unwrap();
        let n = 10;
        for col in 0..4 {
            for i in 0..n {
                let mut lv = 0.0;
                for j in 0..n {
                    lv += l.matrix.get(i, j) * e.row(j)[col];
                }
                assert!((lv - e.eigenvalues[col] * e.row(i)[col]).abs() < 1e-6);
            }
        }
        for a in 0..4 {
            for b in (a + 1)..4 {
                let dot: f64 = (0..n).map(|i| e.row(i)[a] * e.row(i)[b]).sum();
                assert!(dot.abs() < 1e-6);
            }
        }
    }

    #[test]
    fn invalid_k_is_rejected() {
        let l = laplacian(&testing::complete_graph(3)).unwrap();
        assert!(matches!(
            smallest_eigenpairs(&l, 0),
            Err(Error::InvalidK { k: 0, n: 3 })
        ));
        assert!(matches!(
            smallest_eigenpairs(&l, 4),
            Err(Error::InvalidK { k: 4, n: 3 })
        ));
    }

    #[test]
    fn two_triangles_split_in_both_modes() {
        let g = testing::disjoint_cliques(&[3, 3]);
        for mode in [LabelMode::Kmeans, LabelMode::Discretize] {
            let p = spectral_cluster(&g, 2, mode, 0).unwrap();
            assert_eq!(
                testing::normalize_partition(&p.assignment),
                vec![vec![0, 1, 2], vec![3, 4, 5]],
                "mode {mode:?}"
            );
        }
    }

    #[test]
    fn three_k4_blocks_recovered() {
        let g = testing::disjoint_cliques(&[4, 4, 4]);
        for mode in [LabelMode::Kmeans, LabelMode::Discretize] {
            let p = spectral_cluster(&g, 3, mode, 0).unwrap();
            assert_eq!(
                testing::normalize_partition(&p.assignment),
                vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7], vec![8, 9, 10, 11]]
            );
        }
    }

    #[test]
    fn connected_graph_single_cluster() {
        let g = testing::complete_graph(3);
        let p = spectral_cluster(&g, 1, LabelMode::Kmeans, 0).unwrap();
        assert_eq!(p.assignment, vec![0, 0, 0]);
        let p = spectral_cluster(&g, 1, LabelMode::Discretize, 0).unwrap();
        assert_eq!(p.assignment, vec![0, 0, 0]);
    }
}
