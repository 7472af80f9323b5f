//! Force-directed spring layout, deterministic across platforms.
//!
//! Fruchterman-Reingold style: weighted attraction along edges, all-pairs
//! repulsion, linearly cooling step cap, final rescale into the unit
//! square. Initial positions come from a fixed 64-bit linear congruential
//! generator (Knuth's MMIX multiplier 6364136223846793005 and increment
//! 1442695040888963407), so a (graph, seed, iterations) triple always
//! produces the same coordinates.

use crate::graph::WeightedGraph;

/// Per-node positions inside the unit square.
#[derive(Debug, Clone, PartialEq)]
pub struct LayoutCoordinates {
    pub positions: Vec<(f64, f64)>,
}

/// Fixed-constant LCG; the top 53 bits feed the float mantissa.
struct Lcg(u64);

impl Lcg {
    fn new(seed: u64) -> Self {
        Lcg(seed)
    }

    fn next_f64(&mut self) -> f64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }
}

const INITIAL_TEMPERATURE: f64 = 0.1;
const MIN_DISTANCE: f64 = 1e-9;

/// Spring layout for the default iteration count (50).
pub fn spring_layout_default(g: &WeightedGraph, seed: u64) -> LayoutCoordinates {
    spring_layout(g, seed, 50)
}

/// Seeded spring layout. Repulsion is the exact all-pairs O(n²) sum, so
/// large graphs are faithful but slow.
pub fn spring_layout(g: &WeightedGraph, seed: u64, iterations: usize) -> LayoutCoordinates {
    let n = g.node_count();
    if n == 0 {
        return LayoutCoordinates {
            positions: Vec::new(),
        };
    }

    let mut rng = Lcg::new(seed);
    // index-scaled jitter breaks coincident starts deterministically
    let mut positions: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let jitter = 1e-6 * i as f64;
            (rng.next_f64() + jitter, rng.next_f64() + jitter)
        })
        .collect();

    let k = (1.0 / n as f64).sqrt();
    let mut displacement = vec![(0.0f64, 0.0f64); n];

    for iteration in 0..iterations {
        let temperature = INITIAL_TEMPERATURE * (1.0 - iteration as f64 / iterations.max(1) as f64);
        displacement.fill((0.0, 0.0));

        for i in 0..n {
            for j in (i + 1)..n {
                let dx = positions[i].0 - positions[j].0;
                let dy = positions[i].1 - positions[j].1;
                let dist = (dx * dx + dy * dy).sqrt().max(MIN_DISTANCE);
                let force = k * k / dist;
                let (ux, uy) = (dx / dist, dy / dist);
                displacement[i].0 += ux * force;
                displacement[i].1 += uy * force;
                displacement[j].0 -= ux * force;
                displacement[j].1 -= uy * force;
            }
        }

        for (a, b, w) in g.edges() {
            let dx = positions[a].0 - positions[b].0;
            let dy = positions[a].1 - positions[b].1;
            let dist = (dx * dx + dy * dy).sqrt().max(MIN_DISTANCE);
            // spring strength equals the edge weight
            let force = w * dist * dist / k;
            let (ux, uy) = (dx / dist, dy / dist);
            displacement[a].0 -= ux * force;
            displacement[a].1 -= uy * force;
            displacement[b].0 += ux * force;
            displacement[b].1 += uy * force;
        }

        for i in 0..n {
            let (dx, dy) = displacement[i];
            let len = (dx * dx + dy * dy).sqrt();
            if len > 0.0 {
                let step = len.min(temperature);
                positions[i].0 += dx / len * step;
                positions[i].1 += dy / len * step;
            }
        }
    }

    rescale_unit_square(&mut positions);
    LayoutCoordinates { positions }
}

/// Min-max rescale per axis; a zero-span axis collapses to 0.5 (which also
/// puts a lone node at the square's center).
fn rescale_unit_square(positions: &mut [(f64, f64)]) {
    for axis in 0..2 {
        let values: Vec<f64> = positions
            .iter()
            .map(|p| if axis == 0 { p.0 } else { p.1 })
            .collect();
        let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let span = max - min;
        for (p, v) in positions.iter_mut().zip(values) {
            let scaled = if span > 0.0 { (v - min) / span } else { 0.5 };
            if axis == 0 {
                p.0 = scaled;
            } else {
                p.1 = scaled;
            }
        }
    }
}
