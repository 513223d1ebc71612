//! Reduction from constraint-logic reachability to friends-and-strangers
//! reachability.
//!
//! Every NCL edge becomes an edge gadget and every vertex a vertex gadget.
//! Edge `i` takes locations `18 i .. 18 i + 18`; vertex gadgets follow in
//! vertex order. Port 0 of an edge gadget is wired to the edge's `u`
//! endpoint and port 1 to `v`, so the drawn placement (pointing toward port
//! 0) encodes an edge whose head is `u`.
//!
//! OR vertices take their incident edges on ports in ascending edge order.
//! AND vertices take their two weight-1 edges on ports 0 and 1 (ascending)
//! and the weight-2 edge on port 2.

mod bundle;
mod translate;

use std::collections::BTreeMap;
use std::ops::Range;

use fasncl_core::fs::{ColorClassing, Configuration, FasInstance};
use fasncl_core::graph::VertexId;
use fasncl_core::ncl::{self, NclGraph, Orientation, VertexKind};
use fasncl_core::{FsError, NclError};
use fasncl_gadgets::assembly::color_classing;
use fasncl_gadgets::direction::{direction_of, edge_state, vertex_interior, EdgeGadgetDirection, GadgetError};
use fasncl_gadgets::{blueprint, build_people_graph, Assembly, Color, GadgetKind};

pub use bundle::{EdgeEntry, ReductionBundle, VertexEntry};

#[derive(Debug, thiserror::Error)]
pub enum ReduceError {
    #[error(transparent)]
    Ncl(#[from] NclError),
    #[error(transparent)]
    Fs(#[from] FsError),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error("vertex {vertex} ({kind}) cannot be wired: incident weights do not fit its ports")]
    PortMismatch { vertex: u32, kind: &'static str },
    #[error("reduction defect at flip {step} (edge {edge}): {detail}")]
    Defect { step: usize, edge: usize, detail: String },
}

/// Where one NCL edge lives in the location graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeGadgetMap {
    pub edge: usize,
    pub kind: GadgetKind,
    pub part: usize,
    pub locations: Range<u32>,
    /// `(edge gadget location, vertex gadget location)` for ports 0 and 1.
    pub port_links: [(u32, u32); 2],
}

/// Where one NCL vertex lives in the location graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexGadgetMap {
    pub vertex: u32,
    pub kind: GadgetKind,
    pub part: usize,
    pub locations: Range<u32>,
    /// NCL edge attached at each vertex-gadget port.
    pub port_edges: [usize; 3],
}

#[derive(Debug, Clone)]
pub struct ReductionArtifact {
    pub ncl: NclGraph,
    pub from: Orientation,
    pub to: Orientation,
    pub fas: FasInstance,
    pub sigma: Configuration,
    pub sigma_prime: Configuration,
    /// Color of each person.
    pub colors: Vec<Color>,
    pub edge_map: Vec<EdgeGadgetMap>,
    pub vertex_map: Vec<VertexGadgetMap>,
    assembly: Assembly,
}

fn vertex_gadget(kind: VertexKind) -> GadgetKind {
    match kind {
        VertexKind::Or => GadgetKind::OrVertex,
        VertexKind::And => GadgetKind::AndVertex,
    }
}

fn port_order(g: &NclGraph, v: VertexId) -> Result<[usize; 3], ReduceError> {
    let mut inc = g.incident(v);
    inc.sort_unstable();
    match g.kind(v) {
        VertexKind::Or => Ok(inc),
        VertexKind::And => {
            let reds: Vec<usize> = inc.iter().copied().filter(|&e| g.edges()[e].weight == 1).collect();
            let blues: Vec<usize> = inc.iter().copied().filter(|&e| g.edges()[e].weight == 2).collect();
            if reds.len() != 2 || blues.len() != 1 {
                return Err(ReduceError::PortMismatch { vertex: v.0, kind: "AND" });
            }
            Ok([reds[0], reds[1], blues[0]])
        }
    }
}

/// Builds the location graph and both configurations for `g`, `f`, `t`.
pub fn reduce(g: &NclGraph, f: &Orientation, t: &Orientation) -> Result<ReductionArtifact, ReduceError> {
    for o in [f, t] {
        if o.len() != g.edge_count() {
            return Err(NclError::Arity { expected: g.edge_count(), got: o.len() }.into());
        }
        if let Some((v, w)) = ncl::violation(g, o)? {
            return Err(NclError::InvalidOrientation { vertex: v.0, in_weight: w }.into());
        }
    }
    let mut assembly = Assembly::new();
    let mut edge_parts = Vec::with_capacity(g.edge_count());
    for (i, e) in g.edges().iter().enumerate() {
        let kind = GadgetKind::edge_for_weight(e.weight);
        edge_parts.push((kind, assembly.add(&blueprint(kind), &format!("e{i}"))));
    }
    let mut vertex_map = Vec::with_capacity(g.vertex_count());
    for v in 0..g.vertex_count() as u32 {
        let kind = vertex_gadget(g.kind(VertexId(v)));
        let part = assembly.add(&blueprint(kind), &format!("x{v}"));
        let p = assembly.part(part);
        vertex_map.push(VertexGadgetMap {
            vertex: v,
            kind,
            part,
            locations: p.offset..p.offset + p.len,
            port_edges: port_order(g, VertexId(v))?,
        });
    }
    let mut links = vec![[(0u32, 0u32); 2]; g.edge_count()];
    for vm in &vertex_map {
        for (port, &e) in vm.port_edges.iter().enumerate() {
            let side = usize::from(g.edges()[e].u != VertexId(vm.vertex));
            let epart = edge_parts[e].1;
            assembly.connect((vm.part, port), (epart, side));
            links[e][side] = (assembly.part(epart).ports[side], assembly.part(vm.part).ports[port]);
        }
    }
    let edge_map: Vec<EdgeGadgetMap> = edge_parts
        .iter()
        .enumerate()
        .map(|(i, &(kind, part))| {
            let p = assembly.part(part);
            EdgeGadgetMap { edge: i, kind, part, locations: p.offset..p.offset + p.len, port_links: links[i] }
        })
        .collect();

    let colors = placement(g, &edge_map, &vertex_map, f)?;
    for i in 0..assembly.parts().len() {
        let r = assembly.part(i).range();
        assembly.recolor(i, &colors[r]);
    }
    let fas = FasInstance::new(assembly.location_graph(), build_people_graph(&colors))?;
    let sigma_prime = assign(&colors, &placement(g, &edge_map, &vertex_map, t)?).ok_or_else(population_defect)?;
    Ok(ReductionArtifact {
        ncl: g.clone(),
        from: f.clone(),
        to: t.clone(),
        fas,
        sigma: Configuration::identity(colors.len()),
        sigma_prime,
        colors,
        edge_map,
        vertex_map,
        assembly,
    })
}

fn population_defect() -> ReduceError {
    ReduceError::Defect { step: 0, edge: 0, detail: "color populations differ between orientations".into() }
}

fn placement(
    g: &NclGraph,
    edge_map: &[EdgeGadgetMap],
    vertex_map: &[VertexGadgetMap],
    o: &Orientation,
) -> Result<Vec<Color>, ReduceError> {
    if o.len() != g.edge_count() {
        return Err(NclError::Arity { expected: g.edge_count(), got: o.len() }.into());
    }
    if let Some((v, w)) = ncl::violation(g, o)? {
        return Err(NclError::InvalidOrientation { vertex: v.0, in_weight: w }.into());
    }
    let total = edge_map.iter().map(|m| m.locations.len()).sum::<usize>()
        + vertex_map.iter().map(|m| m.locations.len()).sum::<usize>();
    let mut out = vec![Color::White; total];
    for em in edge_map {
        let dir = if o.toward_v(em.edge) {
            EdgeGadgetDirection::TowardPort1
        } else {
            EdgeGadgetDirection::TowardPort0
        };
        let r = em.locations.start as usize..em.locations.end as usize;
        out[r].copy_from_slice(&edge_state(em.kind, dir)?);
    }
    for vm in vertex_map {
        let mask = vm
            .port_edges
            .iter()
            .enumerate()
            .filter(|&(_, &e)| o.head(g, e) != VertexId(vm.vertex))
            .fold(0u8, |m, (i, _)| m | 1 << i);
        let r = vm.locations.start as usize..vm.locations.end as usize;
        out[r].copy_from_slice(&vertex_interior(vm.kind, mask)?);
    }
    Ok(out)
}

/// Puts the people of each color onto that color's locations, both in
/// ascending order.
pub(crate) fn assign(person_colors: &[Color], placement: &[Color]) -> Option<Configuration> {
    let mut queues: Vec<std::collections::VecDeque<u32>> = vec![Default::default(); Color::COUNT];
    for (p, c) in person_colors.iter().enumerate() {
        queues[c.index()].push_back(p as u32);
    }
    let assignment: Option<Vec<u32>> = placement.iter().map(|c| queues[c.index()].pop_front()).collect();
    Configuration::new(assignment?).ok()
}

impl ReductionArtifact {
    pub fn location_count(&self) -> usize {
        self.colors.len()
    }

    /// Color classes of the people; class ids are color indices.
    pub fn classing(&self) -> ColorClassing {
        color_classing(&self.colors)
    }

    /// Color standing on each location when the NCL graph is oriented as
    /// `o`.
    pub fn placement(&self, o: &Orientation) -> Result<Vec<Color>, ReduceError> {
        placement(&self.ncl, &self.edge_map, &self.vertex_map, o)
    }

    /// Canonical configuration encoding `o`.
    pub fn orientation_to_config(&self, o: &Orientation) -> Result<Configuration, ReduceError> {
        let placement = self.placement(o)?;
        assign(&self.colors, &placement).ok_or_else(population_defect)
    }

    /// Colors per location under configuration `c`.
    pub fn colors_at(&self, c: &Configuration) -> Vec<Color> {
        c.as_slice().iter().map(|&p| self.colors[p as usize]).collect()
    }

    /// Reads every edge gadget. `None` when some gadget is mid-migration.
    pub fn config_to_orientation(&self, c: &Configuration) -> Result<Option<Orientation>, ReduceError> {
        self.pattern_to_orientation(&self.colors_at(c))
    }

    /// Like [`Self::config_to_orientation`] but from colors per location.
    pub fn pattern_to_orientation(&self, colors: &[Color]) -> Result<Option<Orientation>, ReduceError> {
        let mut bits = Vec::with_capacity(self.edge_map.len());
        for em in &self.edge_map {
            let r = em.locations.start as usize..em.locations.end as usize;
            match direction_of(&blueprint(em.kind), &colors[r])? {
                Some(EdgeGadgetDirection::TowardPort0) => bits.push(0),
                Some(EdgeGadgetDirection::TowardPort1) => bits.push(1),
                None => return Ok(None),
            }
        }
        Ok(Some(Orientation::from_bits(&bits)?))
    }

    /// Locations of the gadgets an edge flip touches: the edge gadget and
    /// both endpoint vertex gadgets.
    pub fn flip_region(&self, edge: usize) -> Vec<u32> {
        let e = self.ncl.edges()[edge];
        let mut region: Vec<u32> = self.edge_map[edge].locations.clone().collect();
        for x in [e.u, e.v] {
            region.extend(self.vertex_map[x.index()].locations.clone());
        }
        region.sort_unstable();
        region
    }

    pub fn to_dot(&self) -> String {
        self.assembly.to_dot("reduction")
    }

    /// Gadget-level summary for reports.
    pub fn gadget_counts(&self) -> BTreeMap<&'static str, usize> {
        let mut m = BTreeMap::new();
        for e in &self.edge_map {
            *m.entry(e.kind.name()).or_default() += 1;
        }
        for v in &self.vertex_map {
            *m.entry(v.kind.name()).or_default() += 1;
        }
        m
    }
}

pub use translate::translate_witness;

/// Free-function form of [`ReductionArtifact::orientation_to_config`].
pub fn orientation_to_config(art: &ReductionArtifact, o: &Orientation) -> Result<Configuration, ReduceError> {
    art.orientation_to_config(o)
}

/// Free-function form of [`ReductionArtifact::config_to_orientation`].
pub fn config_to_orientation(art: &ReductionArtifact, c: &Configuration) -> Result<Option<Orientation>, ReduceError> {
    art.config_to_orientation(c)
}
