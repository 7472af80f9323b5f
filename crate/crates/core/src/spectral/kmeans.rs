//! Lloyd's k-means over spectral embedding rows with deterministic seeding.

use crate::community::Partition;
use crate::error::{Error, Result};

use super::SpectralEmbedding;

const MOVEMENT_TOL: f64 = 1e-9;
const MAX_ITERS: usize = 300;

fn distance_sq(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Farthest-point seeding: the max-norm row first, then rows maximizing the
/// distance to the chosen set; ties broken by smallest row index.
fn seed_centroids(rows: &[&[f64]], k: usize) -> Vec<Vec<f64>> {
    let mut centroids: Vec<Vec<f64>> = Vec::with_capacity(k);
    let first = rows
        .iter()
        .enumerate()
        .max_by(|(ia, a), (ib, b)| {
            let na: f64 = a.iter().map(|v| v * v).sum();
            let nb: f64 = b.iter().map(|v| v * v).sum();
            na.total_cmp(&nb).then(ib.cmp(ia)) // prefer the smaller index on ties
        })
        .map(|(i, _)| i)
        .expect("at least one row");
    centroids.push(rows[first].to_vec());
    while centroids.len() < k {
        let next = rows
            .iter()
            .enumerate()
            .max_by(|(ia, a), (ib, b)| {
                let da = centroids
                    .iter()
                    .map(|c| distance_sq(a, c))
                    .fold(f64::INFINITY, f64::min);
                let db = centroids
                    .iter()
                    .map(|c| distance_sq(b, c))
                    .fold(f64::INFINITY, f64::min);
                da.total_cmp(&db).then(ib.cmp(ia))
            })
            .map(|(i, _)| i)
            .expect("at least one row");
        centroids.push(rows[next].to_vec());
    }
    centroids
}

/// Lloyd iterations; returns the assignment and the per-iteration objective
/// (sum of squared distances), which never increases.
fn lloyd(rows: &[&[f64]], mut centroids: Vec<Vec<f64>>) -> (Vec<usize>, Vec<f64>) {
    let n = rows.len();
    let k = centroids.len();
    let dim = rows[0].len();
    let mut assignment = vec![0usize; n];
    let mut trace = Vec::new();

    for _ in 0..MAX_ITERS {
        let mut objective = 0.0;
        for (i, row) in rows.iter().enumerate() {
            let mut best = 0;
            let mut best_d = f64::INFINITY;
            for (c, centroid) in centroids.iter().enumerate() {
                let d = distance_sq(row, centroid);
                if d < best_d {
                    best_d = d;
                    best = c;
                }
            }
            assignment[i] = best;
            objective += best_d;
        }
        trace.push(objective);

        let mut sums = vec![vec![0.0; dim]; k];
        let mut counts = vec![0usize; k];
        for (i, row) in rows.iter().enumerate() {
            counts[assignment[i]] += 1;
            for (acc, v) in sums[assignment[i]].iter_mut().zip(*row) {
                *acc += v;
            }
        }
        let mut movement = 0.0f64;
        for c in 0..k {
            if counts[c] == 0 {
                continue; // empty cluster keeps its centroid
            }
            for v in &mut sums[c] {
                *v /= counts[c] as f64;
            }
            movement = movement.max(distance_sq(&sums[c], &centroids[c]).sqrt());
            centroids[c] = std::mem::take(&mut sums[c]);
        }
        if movement < MOVEMENT_TOL {
            break;
        }
    }
    (assignment, trace)
}

pub(super) fn kmeans_with_trace(e: &SpectralEmbedding, k: usize) -> Result<(Partition, Vec<f64>)> {
    let n = e.node_count();
    if k == 0 || k > n {
        return Err(Error::InvalidK { k, n });
    }
    let rows: Vec<&[f64]> = (0..n).map(|i| e.row(i)).collect();
    let centroids = seed_centroids(&rows, k);
    let (assignment, trace) = lloyd(&rows, centroids);
    Ok((Partition::from_assignment(&assignment), trace))
}

/// K-means labels for the embedding rows.
///
/// Seeding is deterministic farthest-point (max-norm row first), so the
/// result does not depend on `seed`; the parameter is kept for interface
/// stability with randomized implementations. At most k non-empty clusters
/// come back, renumbered densely.
pub fn kmeans_labels(e: &SpectralEmbedding, k: usize, _seed: u64) -> Result<Partition> {
    kmeans_with_trace(e, k).map(|(p, _)| p)
}
