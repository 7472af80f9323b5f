//! Weighted-graph analytics for social networks: edge-list ingestion,
//! maximal clique enumeration, centrality measures with average-rank
//! key-figure scoring, Louvain community detection, spectral clustering,
//! and force-directed layout export.

pub mod centrality;
pub mod cliques;
pub mod community;
pub mod error;
pub mod export;
pub mod fmt;
pub mod graph;
pub mod layout;
pub mod matrix;
mod parallel;
pub mod spectral;
pub mod testing;

pub use error::{Error, Result};
pub use graph::{parse_edge_list, WeightedGraph, DEFAULT_DENSE_LIMIT};
pub use parallel::worker_threads;
