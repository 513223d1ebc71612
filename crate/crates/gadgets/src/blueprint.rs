//! Transcribed gadget fragments.
//!
//! Locations are numbered row-major in drawing coordinates: top row first,
//! left to right within a row. Names are the node names used in the
//! drawings (`v0`..`v17` for edge gadgets, `m`, `o1`, ... for vertex
//! interiors) and coordinates are the drawing coordinates.

use fasncl_core::graph::VertexId;
use fasncl_core::SimpleGraph;
use serde::{Deserialize, Serialize};

use crate::color::Color;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GadgetKind {
    BlueEdge,
    RedEdge,
    OrVertex,
    AndVertex,
}

impl GadgetKind {
    pub const ALL: [GadgetKind; 4] = [
        GadgetKind::BlueEdge,
        GadgetKind::RedEdge,
        GadgetKind::OrVertex,
        GadgetKind::AndVertex,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GadgetKind::BlueEdge => "BLUE_EDGE",
            GadgetKind::RedEdge => "RED_EDGE",
            GadgetKind::OrVertex => "OR_VERTEX",
            GadgetKind::AndVertex => "AND_VERTEX",
        }
    }

    pub fn is_edge(self) -> bool {
        matches!(self, GadgetKind::BlueEdge | GadgetKind::RedEdge)
    }

    /// Edge gadget for an edge of the given weight.
    pub fn edge_for_weight(weight: u8) -> GadgetKind {
        if weight == 1 {
            GadgetKind::RedEdge
        } else {
            GadgetKind::BlueEdge
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Port {
    pub name: String,
    /// Boundary location the external edge attaches to.
    pub location: u32,
    /// Corridor color on this side; the heavy counterpart is what crosses.
    pub light: Color,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedLocations {
    pub alpha: u32,
    pub beta: u32,
    pub gamma: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetBlueprint {
    pub kind: GadgetKind,
    pub locations: SimpleGraph,
    pub initial_colors: Vec<Color>,
    pub names: Vec<&'static str>,
    pub coords: Vec<(i32, i32)>,
    pub ports: Vec<Port>,
    /// Present for edge gadgets only.
    pub named: Option<NamedLocations>,
}

struct Node(&'static str, i32, i32, Color);

fn assemble(
    kind: GadgetKind,
    nodes: &[Node],
    edges: &[(&str, &str)],
    ports: &[(&str, &str, Color)],
    named: Option<(&str, &str, &str)>,
) -> GadgetBlueprint {
    let id = |name: &str| -> u32 {
        nodes
            .iter()
            .position(|n| n.0 == name)
            .unwrap_or_else(|| panic!("no node {name}")) as u32
    };
    let locations = SimpleGraph::new(nodes.len(), edges.iter().map(|&(a, b)| (id(a), id(b))))
        .expect("transcribed edges are valid");
    GadgetBlueprint {
        kind,
        locations,
        initial_colors: nodes.iter().map(|n| n.3).collect(),
        names: nodes.iter().map(|n| n.0).collect(),
        coords: nodes.iter().map(|n| (n.1, n.2)).collect(),
        ports: ports
            .iter()
            .map(|&(name, at, light)| Port { name: name.to_string(), location: id(at), light })
            .collect(),
        named: named.map(|(a, b, g)| NamedLocations { alpha: id(a), beta: id(b), gamma: id(g) }),
    }
}

fn edge_gadget(kind: GadgetKind, heavy: Color, light: Color) -> GadgetBlueprint {
    use Color::*;
    let nodes = [
        Node("v0", 4, 2, Green),
        Node("v1", 6, 2, Violet),
        Node("v2", 8, 2, White),
        Node("v3", 10, 2, White),
        Node("v4", 12, 2, White),
        Node("v5", 14, 2, White),
        Node("v6", 16, 2, White),
        Node("v7", 18, 2, Orange),
        Node("v8", 0, 0, light),
        Node("v9", 2, 0, light),
        Node("v10", 4, 0, light),
        Node("v11", 6, 0, light),
        Node("v12", 8, 0, Orange),
        Node("v13", 14, 0, heavy),
        Node("v14", 16, 0, Violet),
        Node("v15", 18, 0, light),
        Node("v16", 20, 0, light),
        Node("v17", 22, 0, light),
    ];
    let edges = [
        ("v0", "v1"),
        ("v1", "v2"),
        ("v2", "v3"),
        ("v3", "v4"),
        ("v4", "v5"),
        ("v5", "v6"),
        ("v6", "v7"),
        ("v1", "v11"),
        ("v8", "v9"),
        ("v9", "v10"),
        ("v10", "v11"),
        ("v11", "v12"),
        ("v6", "v14"),
        ("v13", "v14"),
        ("v14", "v15"),
        ("v15", "v16"),
        ("v16", "v17"),
    ];
    assemble(
        kind,
        &nodes,
        &edges,
        &[("port0", "v8", light), ("port1", "v17", light)],
        Some(("v12", "v7", "v13")),
    )
}

fn or_vertex() -> GadgetBlueprint {
    use Color::*;
    let nodes = [
        Node("m2", -2, 8, LightBlue),
        Node("o2", -2, 6, Blue),
        Node("m", -2, 4, LightBlue),
        Node("o1", -2, 2, Blue),
        Node("m1", -2, 0, LightBlue),
    ];
    let edges = [("m2", "o2"), ("m", "o1"), ("m", "o2"), ("m1", "o1")];
    assemble(
        GadgetKind::OrVertex,
        &nodes,
        &edges,
        &[("m2", "m2", LightBlue), ("m", "m", LightBlue), ("m1", "m1", LightBlue)],
        None,
    )
}

fn and_vertex() -> GadgetBlueprint {
    use Color::*;
    let nodes = [
        Node("n3", -10, 8, LightRed),
        Node("n2", -2, 8, Red),
        Node("q2", -8, 4, Orange),
        Node("q1", -4, 4, Orange),
        Node("n1", -2, 4, Red),
        Node("n4", -10, 2, LightRed),
        Node("p2", -8, 2, LightRed),
        Node("p1", -4, 2, LightRed),
        Node("n", -2, 2, LightRed),
        Node("o3", -10, 0, Blue),
        Node("o2", -8, 0, Violet),
        Node("m2", -6, 0, LightBlue),
        Node("o1", -4, 0, Violet),
        Node("m", -2, 0, LightBlue),
    ];
    let edges = [
        ("m2", "o1"),
        ("m2", "o2"),
        ("m", "o1"),
        ("o2", "o3"),
        ("q1", "p1"),
        ("q2", "p2"),
        ("o1", "p1"),
        ("o2", "p2"),
        ("n2", "n3"),
        ("n3", "n4"),
        ("n4", "p2"),
        ("n", "n1"),
        ("n", "p1"),
    ];
    // The two red ports first, then the blue one.
    assemble(
        GadgetKind::AndVertex,
        &nodes,
        &edges,
        &[("n2", "n2", LightRed), ("n1", "n1", LightRed), ("m", "m", LightBlue)],
        None,
    )
}

/// The transcribed fragment for `kind`, with its initial placement as drawn.
pub fn blueprint(kind: GadgetKind) -> GadgetBlueprint {
    match kind {
        GadgetKind::BlueEdge => edge_gadget(kind, Color::Blue, Color::LightBlue),
        GadgetKind::RedEdge => edge_gadget(kind, Color::Red, Color::LightRed),
        GadgetKind::OrVertex => or_vertex(),
        GadgetKind::AndVertex => and_vertex(),
    }
}

impl GadgetBlueprint {
    pub fn len(&self) -> usize {
        self.locations.order()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn port(&self, i: usize) -> &Port {
        &self.ports[i]
    }

    /// Number of people of color `c` in the initial placement.
    pub fn count(&self, c: Color) -> usize {
        self.initial_colors.iter().filter(|&&x| x == c).count()
    }

    /// Degree of each location once every port edge is attached.
    pub fn degree_with_ports(&self, v: u32) -> usize {
        let base = self.locations.degree(VertexId(v)).expect("in range");
        base + self.ports.iter().filter(|p| p.location == v).count()
    }

    /// Location id by drawing name.
    pub fn location(&self, name: &str) -> Option<u32> {
        self.names.iter().position(|&n| n == name).map(|i| i as u32)
    }

    /// Graphviz rendering with fill colors and drawing coordinates pinned.
    pub fn to_dot(&self) -> String {
        let attrs = |v: VertexId| {
            let i = v.index();
            let (x, y) = self.coords[i];
            format!(
                "style=filled, fillcolor={}, pos=\"{},{}!\"",
                self.initial_colors[i].fill(),
                x,
                y
            )
        };
        let labels = self.names.iter().enumerate().map(|(i, n)| (i as u32, n.to_string())).collect();
        let named = self.locations.clone().with_labels(labels).expect("labels in range");
        let mut dot = named.to_dot(self.kind.name(), Some(&attrs));
        // Port stubs, drawn as plain points.
        let stubs: String = self
            .ports
            .iter()
            .enumerate()
            .map(|(i, p)| {
                format!(
                    "  port{i} [shape=point, xlabel=\"{}\"];\n  port{i} -- {};\n",
                    p.name, p.location
                )
            })
            .collect();
        let close = dot.rfind('}').expect("dot body");
        dot.insert_str(close, &stubs);
        dot
    }

    pub fn transcription(&self) -> Transcription {
        Transcription {
            kind: self.kind,
            locations: (0..self.len())
                .map(|i| TranscribedLocation {
                    id: i as u32,
                    name: self.names[i].to_string(),
                    x: self.coords[i].0,
                    y: self.coords[i].1,
                    color: self.initial_colors[i],
                })
                .collect(),
            edges: self.locations.edges().iter().map(|&(a, b)| [a.0, b.0]).collect(),
            ports: self.ports.clone(),
            named: self.named,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscribedLocation {
    pub id: u32,
    pub name: String,
    pub x: i32,
    pub y: i32,
    pub color: Color,
}

/// Reviewable dump of one blueprint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcription {
    pub kind: GadgetKind,
    pub locations: Vec<TranscribedLocation>,
    pub edges: Vec<[u32; 2]>,
    pub ports: Vec<Port>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub named: Option<NamedLocations>,
}

/// All four blueprints as one JSON document.
pub fn transcription_table_json() -> String {
    let all: Vec<Transcription> = GadgetKind::ALL.iter().map(|&k| blueprint(k).transcription()).collect();
    serde_json::to_string_pretty(&all).expect("serializable")
}
