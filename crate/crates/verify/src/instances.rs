//! Small named NCL instances used by the tests and the command line.

use fasncl_core::ncl::{NclEdge, NclGraph, VertexKind};

/// Names accepted by [`named`].
pub const NAMES: [&str; 4] = ["triple-pair", "and-pair", "k4-or", "mixed"];

/// Two OR vertices joined by three blue edges.
pub fn triple_pair() -> NclGraph {
    NclGraph::new(vec![VertexKind::Or; 2], vec![NclEdge::new(0, 1, 2); 3]).expect("well formed")
}

/// Two AND vertices joined by two red edges and one blue edge.
pub fn and_pair() -> NclGraph {
    NclGraph::new(
        vec![VertexKind::And; 2],
        vec![NclEdge::new(0, 1, 1), NclEdge::new(0, 1, 1), NclEdge::new(0, 1, 2)],
    )
    .expect("well formed")
}

/// `K4` with OR vertices and blue edges.
pub fn k4_or() -> NclGraph {
    let edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
        .iter()
        .map(|&(u, v)| NclEdge::new(u, v, 2))
        .collect();
    NclGraph::new(vec![VertexKind::Or; 4], edges).expect("well formed")
}

/// Two AND vertices sharing a red double edge, each feeding one OR vertex,
/// and the OR vertices joined by a blue double edge.
pub fn mixed() -> NclGraph {
    NclGraph::new(
        vec![VertexKind::And, VertexKind::And, VertexKind::Or, VertexKind::Or],
        vec![
            NclEdge::new(0, 1, 1),
            NclEdge::new(0, 1, 1),
            NclEdge::new(0, 2, 2),
            NclEdge::new(1, 3, 2),
            NclEdge::new(2, 3, 2),
            NclEdge::new(2, 3, 2),
        ],
    )
    .expect("well formed")
}

pub fn named(name: &str) -> Option<NclGraph> {
    match name {
        "triple-pair" => Some(triple_pair()),
        "and-pair" => Some(and_pair()),
        "k4-or" => Some(k4_or()),
        "mixed" => Some(mixed()),
        _ => None,
    }
}
