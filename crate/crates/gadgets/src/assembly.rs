//! Gluing blueprints into one location graph, and the isolation harness.

use fasncl_core::fs::{ColorClassing, Configuration, FasInstance};
use fasncl_core::graph::VertexId;
use fasncl_core::SimpleGraph;

use crate::blueprint::{GadgetBlueprint, GadgetKind};
use crate::color::{build_people_graph, Color};

/// Light locations between a harnessed port and a source token or a parking
/// spot for released tokens.
pub const CORRIDOR_LEN: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PortScenario {
    /// Port edge removed.
    Sealed,
    /// A corridor ending in one token of the given color.
    Source(Color),
    /// An empty corridor of the port's light color.
    Sink,
}

/// One placed blueprint inside an assembly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Part {
    pub kind: GadgetKind,
    pub label: String,
    pub offset: u32,
    pub len: u32,
    /// Absolute location of each port.
    pub ports: Vec<u32>,
}

impl Part {
    pub fn range(&self) -> std::ops::Range<usize> {
        self.offset as usize..(self.offset + self.len) as usize
    }

    pub fn local(&self, v: u32) -> u32 {
        self.offset + v
    }
}

/// A corridor attached to a port, locations listed from the port outward.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corridor {
    pub part: usize,
    pub port: usize,
    pub scenario: PortScenario,
    pub locations: Vec<u32>,
}

/// Location graph and placement built from blueprints, port links and
/// harness corridors. Person `i` starts on location `i`.
#[derive(Debug, Clone, Default)]
pub struct Assembly {
    edges: Vec<(u32, u32)>,
    colors: Vec<Color>,
    names: Vec<String>,
    parts: Vec<Part>,
    corridors: Vec<Corridor>,
}

impl Assembly {
    pub fn new() -> Self {
        Assembly::default()
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn part(&self, i: usize) -> &Part {
        &self.parts[i]
    }

    pub fn corridors(&self) -> &[Corridor] {
        &self.corridors
    }

    fn push(&mut self, color: Color, name: String) -> u32 {
        self.colors.push(color);
        self.names.push(name);
        (self.colors.len() - 1) as u32
    }

    /// Places `bp` with its drawn colors.
    pub fn add(&mut self, bp: &GadgetBlueprint, label: &str) -> usize {
        self.add_colored(bp, &bp.initial_colors, label)
    }

    /// Places `bp` with an explicit placement.
    pub fn add_colored(&mut self, bp: &GadgetBlueprint, colors: &[Color], label: &str) -> usize {
        assert_eq!(colors.len(), bp.len(), "placement length");
        let offset = self.len() as u32;
        for (i, &c) in colors.iter().enumerate() {
            self.push(c, format!("{label}.{}", bp.names[i]));
        }
        self.edges
            .extend(bp.locations.edges().iter().map(|&(a, b)| (offset + a.0, offset + b.0)));
        self.parts.push(Part {
            kind: bp.kind,
            label: label.to_string(),
            offset,
            len: bp.len() as u32,
            ports: bp.ports.iter().map(|p| offset + p.location).collect(),
        });
        self.parts.len() - 1
    }

    /// Joins two ports with a single location edge.
    pub fn connect(&mut self, a: (usize, usize), b: (usize, usize)) {
        let la = self.parts[a.0].ports[a.1];
        let lb = self.parts[b.0].ports[b.1];
        self.edges.push((la, lb));
    }

    /// Overwrites the colors of one part.
    pub fn recolor(&mut self, part: usize, colors: &[Color]) {
        let range = self.parts[part].range();
        assert_eq!(colors.len(), range.len(), "placement length");
        self.colors[range].copy_from_slice(colors);
    }

    /// Attaches a harness corridor to a port. `light` is the corridor color.
    pub fn attach(&mut self, part: usize, port: usize, scenario: PortScenario, light: Color) {
        let mut locations = Vec::new();
        let label = format!("{}.port{port}", self.parts[part].label);
        match scenario {
            PortScenario::Sealed => {}
            PortScenario::Source(token) => {
                let corridor = token.light().unwrap_or(light);
                for k in 0..CORRIDOR_LEN {
                    locations.push(self.push(corridor, format!("{label}.c{k}")));
                }
                locations.push(self.push(token, format!("{label}.token")));
            }
            PortScenario::Sink => {
                for k in 0..CORRIDOR_LEN {
                    locations.push(self.push(light, format!("{label}.c{k}")));
                }
            }
        }
        let mut prev = self.parts[part].ports[port];
        for &v in &locations {
            self.edges.push((prev, v));
            prev = v;
        }
        self.corridors.push(Corridor { part, port, scenario, locations });
    }

    pub fn location_graph(&self) -> SimpleGraph {
        SimpleGraph::new(self.len(), self.edges.iter().copied()).expect("assembly edges are valid")
    }

    /// `X`, `Y` and the starting configuration (identity).
    pub fn instance(&self) -> (FasInstance, Configuration) {
        let inst = FasInstance::new(self.location_graph(), build_people_graph(&self.colors))
            .expect("orders agree");
        (inst, Configuration::identity(self.len()))
    }

    /// People grouped by color; class ids are color indices.
    pub fn classing(&self) -> ColorClassing {
        color_classing(&self.colors)
    }

    pub fn to_dot(&self, name: &str) -> String {
        let g = self.location_graph();
        let attrs = |v: VertexId| {
            format!(
                "xlabel=\"{}\", style=filled, fillcolor={}",
                self.names[v.index()],
                self.colors[v.index()].fill()
            )
        };
        g.to_dot(name, Some(&attrs))
    }
}

pub fn color_classing(colors: &[Color]) -> ColorClassing {
    ColorClassing::with_class_count(colors.iter().map(|c| c.index() as u32).collect(), Color::COUNT)
}

/// Decodes a quotient-mode state (class id per location) into colors.
pub fn decode_colors(pattern: &[u32]) -> Vec<Color> {
    pattern
        .iter()
        .map(|&c| Color::from_index(c as usize).expect("class ids are color indices"))
        .collect()
}

/// A blueprint in isolation with one scenario per port.
#[derive(Debug, Clone)]
pub struct Harness {
    pub assembly: Assembly,
    pub instance: FasInstance,
    pub start: Configuration,
    pub classing: ColorClassing,
}

impl Harness {
    /// Corridor attached to `port`, if the port is not sealed.
    pub fn corridor(&self, port: usize) -> Option<&Corridor> {
        self.assembly
            .corridors()
            .iter()
            .find(|c| c.port == port && c.scenario != PortScenario::Sealed)
    }
}

/// Isolates `bp` with the given per-port scenarios. The gadget occupies
/// locations `0..bp.len()` with their blueprint numbering.
pub fn harness(bp: &GadgetBlueprint, scenarios: &[PortScenario]) -> Harness {
    assert_eq!(scenarios.len(), bp.ports.len(), "one scenario per port");
    let mut assembly = Assembly::new();
    let part = assembly.add(bp, "g");
    for (i, &s) in scenarios.iter().enumerate() {
        assembly.attach(part, i, s, bp.ports[i].light);
    }
    let (instance, start) = assembly.instance();
    let classing = assembly.classing();
    Harness { assembly, instance, start, classing }
}
