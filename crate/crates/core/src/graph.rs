//! Undirected simple graphs over dense vertex ids.
//!
//! Both the location graph and the people graph of a friends-and-strangers
//! instance are [`SimpleGraph`]s. Vertices are the integers `0..order`; any
//! human-readable label is metadata carried alongside and never consulted by
//! the algorithms. Neighbor lists are kept sorted so every traversal built on
//! top of them is reproducible.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

/// Dense vertex index in `0..order`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<u32> for VertexId {
    fn from(v: u32) -> Self {
        VertexId(v)
    }
}

impl From<usize> for VertexId {
    fn from(v: usize) -> Self {
        VertexId(u32::try_from(v).expect("vertex index exceeds u32"))
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An immutable undirected simple graph.
///
/// Edges are stored normalized (`u < v`) and sorted; adjacency lists are
/// sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    order: usize,
    edges: Vec<(VertexId, VertexId)>,
    adjacency: Vec<Vec<VertexId>>,
    labels: BTreeMap<u32, String>,
}

impl SimpleGraph {
    /// Builds a graph, rejecting self-loops, duplicate edges and out-of-range
    /// endpoints.
    pub fn new<I>(order: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let mut normalized = Vec::new();
        for (a, b) in edges {
            for v in [a, b] {
                if v as usize >= order {
                    return Err(GraphError::VertexOutOfRange { vertex: v, order });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            normalized.push(if a < b { (a, b) } else { (b, a) });
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }

        let mut adjacency = vec![Vec::new(); order];
        for &(a, b) in &normalized {
            adjacency[a as usize].push(VertexId(b));
            adjacency[b as usize].push(VertexId(a));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }

        Ok(SimpleGraph {
            order,
            edges: normalized
                .into_iter()
                .map(|(a, b)| (VertexId(a), VertexId(b)))
                .collect(),
            adjacency,
            labels: BTreeMap::new(),
        })
    }

    pub fn empty(order: usize) -> Self {
        SimpleGraph::new(order, std::iter::empty()).expect("edgeless graph is always valid")
    }

    pub fn complete(order: usize) -> Self {
        let n = order as u32;
        let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
        SimpleGraph::new(order, edges).expect("complete graph is always valid")
    }

    pub fn path(order: usize) -> Self {
        let n = order as u32;
        SimpleGraph::new(order, (1..n).map(|b| (b - 1, b))).expect("path is always valid")
    }

    pub fn complete_bipartite(left: usize, right: usize) -> Self {
        let (l, r) = (left as u32, right as u32);
        let edges = (0..l).flat_map(|a| (0..r).map(move |b| (a, l + b)));
        SimpleGraph::new(left + right, edges).expect("complete bipartite graph is always valid")
    }

    /// Attaches labels to vertices. Labels are metadata only.
    pub fn with_labels(mut self, labels: BTreeMap<u32, String>) -> Result<Self, GraphError> {
        if let Some(&v) = labels.keys().find(|&&v| v as usize >= self.order) {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                order: self.order,
            });
        }
        self.labels = labels;
        Ok(self)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    /// Edges as sorted `(u, v)` pairs with `u < v`.
    #[inline]
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &BTreeMap<u32, String> {
        &self.labels
    }

    /// Sorted neighbors of `v`.
    pub fn neighbors(&self, v: VertexId) -> Result<&[VertexId], GraphError> {
        self.adjacency
            .get(v.index())
            .map(Vec::as_slice)
            .ok_or(GraphError::VertexOutOfRange {
                vertex: v.0,
                order: self.order,
            })
    }

    pub fn degree(&self, v: VertexId) -> Result<usize, GraphError> {
        self.neighbors(v).map(<[VertexId]>::len)
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.adjacency
            .get(a.index())
            .is_some_and(|list| list.binary_search(&b).is_ok())
    }

    /// Subgraph induced on `keep`, renumbered in the order given.
    pub fn induced(&self, keep: &[VertexId]) -> Result<SimpleGraph, GraphError> {
        let mut position = vec![u32::MAX; self.order];
        for (i, v) in keep.iter().enumerate() {
            if v.index() >= self.order {
                return Err(GraphError::VertexOutOfRange {
                    vertex: v.0,
                    order: self.order,
                });
            }
            position[v.index()] = i as u32;
        }
        let edges = self.edges.iter().filter_map(|&(a, b)| {
            let (pa, pb) = (position[a.index()], position[b.index()]);
            (pa != u32::MAX && pb != u32::MAX).then_some((pa, pb))
        });
        SimpleGraph::new(keep.len(), edges)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            order: self.order,
            edges: self.edges.iter().map(|&(a, b)| [a.0, b.0]).collect(),
            labels: (!self.labels.is_empty()).then(|| self.labels.clone()),
        }
    }

    pub fn from_json(json: &GraphJson) -> Result<Self, GraphError> {
        let graph = SimpleGraph::new(json.order, json.edges.iter().map(|e| (e[0], e[1])))?;
        match &json.labels {
            Some(labels) => graph.with_labels(labels.clone()),
            None => Ok(graph),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("graph serialization cannot fail")
    }

    pub fn from_json_str(s: &str) -> Result<Self, GraphError> {
        let json: GraphJson = serde_json::from_str(s)?;
        SimpleGraph::from_json(&json)
    }

    /// Graphviz rendering. `node_attrs` may add attributes per vertex, e.g.
    /// `style=filled, fillcolor=orange`.
    pub fn to_dot(&self, name: &str, node_attrs: Option<&dyn Fn(VertexId) -> String>) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph \"{}\" {{", name.replace('"', "\\\""));
        for v in 0..self.order as u32 {
            let label = self
                .labels
                .get(&v)
                .map(|l| l.replace('"', "\\\""))
                .unwrap_or_else(|| v.to_string());
            let extra = node_attrs
                .map(|f| f(VertexId(v)))
                .filter(|s| !s.is_empty())
                .map(|s| format!(", {s}"))
                .unwrap_or_default();
            let _ = writeln!(out, "  {v} [label=\"{label}\"{extra}];");
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "  {a} -- {b};");
        }
        out.push_str("}\n");
        out
    }
}

/// Wire form: `{ "order": n, "edges": [[u, v], ...], "labels": {...}? }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub order: usize,
    pub edges: Vec<[u32; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<BTreeMap<u32, String>>,
}

impl Serialize for SimpleGraph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SimpleGraph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let json = GraphJson::deserialize(deserializer)?;
        SimpleGraph::from_json(&json).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    #[test]
    fn neighbors_examples() {
        let p3 = SimpleGraph::path(3);
        assert_eq!(p3.neighbors(v(1)).unwrap(), &[v(0), v(2)]);
        assert_eq!(p3.neighbors(v(0)).unwrap(), &[v(1)]);
        let e2 = SimpleGraph::empty(2);
        assert!(e2.neighbors(v(0)).unwrap().is_empty());
        assert!(matches!(
            p3.neighbors(v(3)),
            Err(GraphError::VertexOutOfRange { vertex: 3, order: 3 })
        ));
    }

    #[test]
    fn max_degree_examples() {
        assert_eq!(SimpleGraph::path(3).max_degree(), 2);
        assert_eq!(SimpleGraph::complete_bipartite(1, 3).max_degree(), 3);
        assert_eq!(SimpleGraph::empty(5).max_degree(), 0);
        assert_eq!(SimpleGraph::empty(0).max_degree(), 0);
    }

    #[test]
    fn rejects_malformed_edges() {
        assert!(matches!(
            SimpleGraph::new(2, [(0, 0)]),
            Err(GraphError::SelfLoop(0))
        ));
        assert!(matches!(
            SimpleGraph::new(2, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        ));
        assert!(matches!(
            SimpleGraph::new(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, .. })
        ));
    }

    #[test]
    fn json_shape() {
        let g = SimpleGraph::path(3)
            .with_labels(BTreeMap::from([(1, "mid".to_string())]))
            .unwrap();
        assert_eq!(
            g.to_json_string(),
            r#"{"order":3,"edges":[[0,1],[1,2]],"labels":{"1":"mid"}}"#
        );
        assert_eq!(
            SimpleGraph::empty(2).to_json_string(),
            r#"{"order":2,"edges":[]}"#
        );
    }

    #[test]
    fn dot_export_lists_every_vertex_and_edge() {
        let dot = SimpleGraph::path(3).to_dot("p3", None);
        assert!(dot.starts_with("graph \"p3\" {"));
        assert_eq!(dot.matches("label=").count(), 3);
        assert_eq!(dot.matches(" -- ").count(), 2);
    }

    #[test]
    fn induced_subgraph_renumbers() {
        let k4 = SimpleGraph::complete(4);
        let sub = k4.induced(&[v(3), v(1)]).unwrap();
        assert_eq!(sub.order(), 2);
        assert_eq!(sub.edges(), &[(v(0), v(1))]);
    }

    fn arb_graph() -> impl Strategy<Value = SimpleGraph> {
        (0usize..=64).prop_flat_map(|n| {
            let pairs = if n < 2 { 0 } else { n * (n - 1) / 2 };
            proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
                let mut edges = Vec::new();
                let mut k = 0;
                for a in 0..n as u32 {
                    for b in a + 1..n as u32 {
                        if bits[k] {
                            edges.push((a, b));
                        }
                        k += 1;
                    }
                }
                SimpleGraph::new(n, edges).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn json_round_trip(g in arb_graph()) {
            let back = SimpleGraph::from_json_str(&g.to_json_string()).unwrap();
            prop_assert_eq!(back, g);
        }

        #[test]
        fn adjacency_is_symmetric(g in arb_graph()) {
            for a in 0..g.order() as u32 {
                for &b in g.neighbors(v(a)).unwrap() {
                    prop_assert!(g.neighbors(b).unwrap().contains(&v(a)));
                }
            }
            let total: usize = (0..g.order() as u32).map(|a| g.degree(v(a)).unwrap()).sum();
            prop_assert_eq!(total, 2 * g.edge_count());
        }
    }
}
