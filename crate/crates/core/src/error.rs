use thiserror::Error;

/// What went wrong on a single edge-list line.
#[derive(Debug, Clone, PartialEq)]
pub enum ParseIssue {
    /// Line does not split into two labels plus an optional weight.
    Malformed(String),
    /// Weight field did not parse as a finite non-negative real.
    BadWeight(String),
    /// Edge weight below zero.
    NegativeWeight,
    /// Both endpoints name the same node.
    SelfLoop,
    /// Edge seen before with a different weight.
    ConflictingDuplicate { previous: f64, new: f64 },
}

impl std::fmt::Display for ParseIssue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParseIssue::Malformed(s) => write!(f, "malformed line: {s}"),
            ParseIssue::BadWeight(s) => write!(f, "invalid weight: {s}"),
            ParseIssue::NegativeWeight => write!(f, "negative weight"),
            ParseIssue::SelfLoop => write!(f, "self-loop"),
            ParseIssue::ConflictingDuplicate { previous, new } => write!(
                f,
                "duplicate edge with conflicting weight ({previous} vs {new})"
            ),
        }
    }
}

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {issue}")]
    Parse { line: usize, issue: ParseIssue },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("node id {0} out of range")]
    InvalidNode(usize),

    #[error("graph has {nodes} nodes, dense conversion limit is {limit}")]
    DenseLimit { nodes: usize, limit: usize },

    #[error("clique set was not produced from this graph (fingerprint mismatch)")]
    FingerprintMismatch,

    #[error("graph has zero total weight")]
    EmptyGraph,

    #[error("did not converge within {0} iterations")]
    NonConvergence(usize),

    #[error("k = {k} outside valid range 1..={n}")]
    InvalidK { k: usize, n: usize },

    #[error("rankings cover different node sets")]
    NodeSetMismatch,

    #[error("at least one ranking is required")]
    EmptyRankings,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
