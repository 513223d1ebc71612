//! Edge-gadget direction readings, canonical placements and vertex
//! assemblies.
//!
//! The drawn placement of an edge gadget points toward port 0. The placement
//! pointing toward port 1 is not transcribed: it is found by letting a heavy
//! token in through port 0 and searching for the first state in which the
//! migration has completed. Vertex interiors for each set of outward edges
//! are found the same way.

use std::sync::OnceLock;

use fasncl_core::fs::{explore, solve_until, SearchMode, SearchOptions};
use fasncl_core::{FsError, Status};
use serde::{Deserialize, Serialize};

use crate::assembly::{decode_colors, harness, Assembly, PortScenario};
use crate::blueprint::{blueprint, GadgetBlueprint, GadgetKind};
use crate::color::Color;

/// State cap for the searches that derive canonical placements.
const DERIVATION_CAP: usize = 20_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EdgeGadgetDirection {
    TowardPort0,
    TowardPort1,
}

impl EdgeGadgetDirection {
    pub fn reversed(self) -> Self {
        match self {
            EdgeGadgetDirection::TowardPort0 => EdgeGadgetDirection::TowardPort1,
            EdgeGadgetDirection::TowardPort1 => EdgeGadgetDirection::TowardPort0,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum GadgetError {
    #[error("{0} is not an edge gadget")]
    NotAnEdge(&'static str),
    #[error("{0} is not a vertex gadget")]
    NotAVertex(&'static str),
    #[error("outward set {mask:#05b} is not realizable by {kind}")]
    InvalidOutwardSet { kind: &'static str, mask: u8 },
    #[error("no reachable state realizes {what}")]
    NotFound { what: String },
    #[error("search for {what} hit its limit")]
    Limit { what: String },
    #[error(transparent)]
    Fs(#[from] FsError),
}

fn edge_slot(kind: GadgetKind) -> Result<usize, GadgetError> {
    match kind {
        GadgetKind::BlueEdge => Ok(0),
        GadgetKind::RedEdge => Ok(1),
        other => Err(GadgetError::NotAnEdge(other.name())),
    }
}

fn migrate(kind: GadgetKind) -> Result<Vec<Color>, GadgetError> {
    let bp = blueprint(kind);
    let named = bp.named.expect("edge gadgets name alpha");
    let heavy = bp.initial_colors[named.gamma as usize];
    let h = harness(&bp, &[PortScenario::Source(heavy), PortScenario::Sink]);
    let sink = h.corridor(1).expect("sink attached").locations.clone();
    let n = bp.len();
    let hv = heavy.index() as u32;
    let alpha = named.alpha as usize;
    let opts = SearchOptions::quotient(h.classing.clone()).with_max_states(DERIVATION_CAP);
    let goal = |s: &[u32]| {
        s[alpha] == hv
            && sink.iter().any(|&v| s[v as usize] == hv)
            && (0..n).filter(|&v| s[v] == hv).count() == 1
    };
    let r = solve_until(&h.instance, &h.start, &opts, goal)?;
    let what = format!("{} migration", kind.name());
    match r.status {
        Status::Reachable => {}
        Status::Unreachable => return Err(GadgetError::NotFound { what }),
        Status::Limit => return Err(GadgetError::Limit { what }),
    }
    let moves = r.witness.expect("reachable has witness");
    let end = fasncl_core::fs::replay(&h.instance, &h.start, &moves)?;
    let colors = decode_colors(&h.classing.pattern(&end));
    Ok(colors[..n].to_vec())
}

static MIGRATED: [OnceLock<Vec<Color>>; 2] = [OnceLock::new(), OnceLock::new()];

/// Canonical placement of an edge gadget pointing in `dir`.
pub fn edge_state(kind: GadgetKind, dir: EdgeGadgetDirection) -> Result<Vec<Color>, GadgetError> {
    let slot = edge_slot(kind)?;
    match dir {
        EdgeGadgetDirection::TowardPort0 => Ok(blueprint(kind).initial_colors),
        EdgeGadgetDirection::TowardPort1 => {
            if let Some(c) = MIGRATED[slot].get() {
                return Ok(c.clone());
            }
            let c = migrate(kind)?;
            Ok(MIGRATED[slot].get_or_init(|| c).clone())
        }
    }
}

/// Matches `canonical` exactly except that a light slot may hold its heavy
/// token in transit.
fn matches_in_transit(canonical: &[Color], actual: &[Color]) -> bool {
    canonical.iter().zip(actual).all(|(&want, &got)| {
        want == got || (want.is_light() && want.heavy() == Some(got))
    })
}

/// Reads the direction of an edge gadget from its colors. `None` means the
/// gadget is between canonical placements.
pub fn direction_of(bp: &GadgetBlueprint, colors: &[Color]) -> Result<Option<EdgeGadgetDirection>, GadgetError> {
    edge_slot(bp.kind)?;
    assert_eq!(colors.len(), bp.len(), "gadget placement length");
    for dir in [EdgeGadgetDirection::TowardPort0, EdgeGadgetDirection::TowardPort1] {
        if matches_in_transit(&edge_state(bp.kind, dir)?, colors) {
            return Ok(Some(dir));
        }
    }
    Ok(None)
}

/// Exact comparison with a canonical placement.
pub fn is_canonical(kind: GadgetKind, dir: EdgeGadgetDirection, colors: &[Color]) -> Result<bool, GadgetError> {
    Ok(edge_state(kind, dir)? == colors)
}

/// Edge-gadget kind attached at each port of a vertex gadget.
pub fn port_edge_kinds(kind: GadgetKind) -> Result<[GadgetKind; 3], GadgetError> {
    match kind {
        GadgetKind::OrVertex => Ok([GadgetKind::BlueEdge; 3]),
        GadgetKind::AndVertex => Ok([GadgetKind::RedEdge, GadgetKind::RedEdge, GadgetKind::BlueEdge]),
        other => Err(GadgetError::NotAVertex(other.name())),
    }
}

/// Whether a set of outward ports (bit `i` for port `i`) keeps the vertex's
/// incoming weight at least 2.
pub fn outward_set_valid(kind: GadgetKind, mask: u8) -> Result<bool, GadgetError> {
    let weights: [u32; 3] = match kind {
        GadgetKind::OrVertex => [2, 2, 2],
        GadgetKind::AndVertex => [1, 1, 2],
        other => return Err(GadgetError::NotAVertex(other.name())),
    };
    let incoming: u32 = (0..3).filter(|i| mask >> i & 1 == 0).map(|i| weights[i]).sum();
    Ok(mask < 8 && incoming >= 2)
}

/// A vertex gadget with an edge gadget on each port, attached at the edge
/// gadget's port 0 so that its drawn placement points into the vertex.
#[derive(Debug, Clone)]
pub struct VertexAssembly {
    pub kind: GadgetKind,
    pub assembly: Assembly,
    pub vertex_part: usize,
    pub edge_parts: [usize; 3],
    edge_kinds: [GadgetKind; 3],
}

impl VertexAssembly {
    /// Builds the assembly as drawn, with `far` on each edge gadget's port 1.
    pub fn new(kind: GadgetKind, far: PortScenario) -> Result<Self, GadgetError> {
        let edge_kinds = port_edge_kinds(kind)?;
        let mut assembly = Assembly::new();
        let vertex_part = assembly.add(&blueprint(kind), "vertex");
        let mut edge_parts = [0; 3];
        for (i, &ek) in edge_kinds.iter().enumerate() {
            let bp = blueprint(ek);
            let part = assembly.add(&bp, &format!("edge{i}"));
            assembly.connect((vertex_part, i), (part, 0));
            assembly.attach(part, 1, far, bp.ports[1].light);
            edge_parts[i] = part;
        }
        Ok(VertexAssembly { kind, assembly, vertex_part, edge_parts, edge_kinds })
    }

    /// Direction reading of each attached edge gadget in a quotient state.
    pub fn readings(&self, pattern: &[u32]) -> Result<[Option<EdgeGadgetDirection>; 3], GadgetError> {
        let mut out = [None; 3];
        for (i, &part) in self.edge_parts.iter().enumerate() {
            let range = self.assembly.part(part).range();
            let colors = decode_colors(&pattern[range]);
            out[i] = direction_of(&blueprint(self.edge_kinds[i]), &colors)?;
        }
        Ok(out)
    }

    /// Bit `i` set when edge gadget `i` reads as pointing away from the vertex.
    pub fn outward_mask(&self, pattern: &[u32]) -> Result<u8, GadgetError> {
        let r = self.readings(pattern)?;
        Ok((0..3)
            .filter(|&i| r[i] == Some(EdgeGadgetDirection::TowardPort1))
            .fold(0, |m, i| m | 1 << i))
    }

    /// Whether every edge gadget sits exactly in the canonical placement for
    /// `mask`.
    fn exactly(&self, pattern: &[u32], mask: u8) -> Result<bool, GadgetError> {
        for (i, &part) in self.edge_parts.iter().enumerate() {
            let dir = if mask >> i & 1 == 1 {
                EdgeGadgetDirection::TowardPort1
            } else {
                EdgeGadgetDirection::TowardPort0
            };
            let colors = decode_colors(&pattern[self.assembly.part(part).range()]);
            if !is_canonical(self.edge_kinds[i], dir, &colors)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn derive_interiors(kind: GadgetKind) -> Result<[Option<Vec<Color>>; 8], GadgetError> {
    let va = VertexAssembly::new(kind, PortScenario::Sink)?;
    let (inst, start) = va.assembly.instance();
    let mode = SearchMode::Quotient(va.assembly.classing());
    let comp = explore(&inst, &start, &mode, DERIVATION_CAP)?;
    if !comp.is_complete() {
        return Err(GadgetError::Limit { what: format!("{} interiors", kind.name()) });
    }
    let interior = va.assembly.part(va.vertex_part).range();
    let mut found: [Option<Vec<Color>>; 8] = Default::default();
    for s in comp.states() {
        for mask in 0..8u8 {
            if found[mask as usize].is_none() && va.exactly(&s, mask)? {
                found[mask as usize] = Some(decode_colors(&s[interior.clone()]));
            }
        }
    }
    Ok(found)
}

static INTERIORS: [OnceLock<[Option<Vec<Color>>; 8]>; 2] = [OnceLock::new(), OnceLock::new()];

/// Interior placement of a vertex gadget whose ports in `mask` have their
/// edge gadgets pointing outward. The first such placement in breadth-first
/// order from the drawn assembly is used.
pub fn vertex_interior(kind: GadgetKind, mask: u8) -> Result<Vec<Color>, GadgetError> {
    let slot = match kind {
        GadgetKind::OrVertex => 0,
        GadgetKind::AndVertex => 1,
        other => return Err(GadgetError::NotAVertex(other.name())),
    };
    if !outward_set_valid(kind, mask)? {
        return Err(GadgetError::InvalidOutwardSet { kind: kind.name(), mask });
    }
    let table = match INTERIORS[slot].get() {
        Some(t) => t,
        None => {
            let t = derive_interiors(kind)?;
            INTERIORS[slot].get_or_init(|| t)
        }
    };
    table[mask as usize].clone().ok_or_else(|| GadgetError::NotFound {
        what: format!("{} with outward set {mask:#05b}", kind.name()),
    })
}

/// Default state cap for exhaustive assembly scans.
pub const DEFAULT_SCAN_CAP: usize = 10_000_000;

/// Explores an assembly's quotient component up to `cap` stored states.
pub fn explore_assembly(
    assembly: &Assembly,
    cap: usize,
) -> Result<fasncl_core::fs::Component, GadgetError> {
    let (inst, start) = assembly.instance();
    let mode = SearchMode::Quotient(assembly.classing());
    Ok(explore(&inst, &start, &mode, cap)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Left-right reflection of the edge gadget's location graph.
    const MIRROR: [usize; 18] = [7, 6, 5, 4, 3, 2, 1, 0, 17, 16, 15, 14, 13, 12, 11, 10, 9, 8];

    #[test]
    fn reflection_is_an_automorphism() {
        let bp = blueprint(GadgetKind::BlueEdge);
        for &(a, b) in bp.locations.edges() {
            let (ma, mb) = (MIRROR[a.index()] as u32, MIRROR[b.index()] as u32);
            assert!(bp.locations.has_edge(ma.into(), mb.into()));
        }
    }

    #[test]
    fn migrated_state_is_the_reflected_drawing() {
        for kind in [GadgetKind::BlueEdge, GadgetKind::RedEdge] {
            let drawn = blueprint(kind).initial_colors;
            let mut reflected = vec![Color::White; 18];
            for (v, &c) in drawn.iter().enumerate() {
                reflected[MIRROR[v]] = c;
            }
            assert_eq!(edge_state(kind, EdgeGadgetDirection::TowardPort1).unwrap(), reflected);
        }
    }

    #[test]
    fn direction_examples() {
        let bp = blueprint(GadgetKind::BlueEdge);
        assert_eq!(
            direction_of(&bp, &bp.initial_colors).unwrap(),
            Some(EdgeGadgetDirection::TowardPort0)
        );
        let mirrored = edge_state(GadgetKind::BlueEdge, EdgeGadgetDirection::TowardPort1).unwrap();
        assert_eq!(direction_of(&bp, &mirrored).unwrap(), Some(EdgeGadgetDirection::TowardPort1));
        // Green halfway along the white path.
        let mut mid = mirrored.clone();
        mid.swap(3, 7);
        assert_eq!(direction_of(&bp, &mid).unwrap(), None);
        // A blue passing through the light corridor does not change the reading.
        let mut transit = bp.initial_colors.clone();
        transit[9] = Color::Blue;
        assert_eq!(direction_of(&bp, &transit).unwrap(), Some(EdgeGadgetDirection::TowardPort0));
        assert!(direction_of(&blueprint(GadgetKind::OrVertex), &[Color::Blue; 5]).is_err());
    }

    #[test]
    fn outward_sets() {
        let or: Vec<u8> = (0..8).filter(|&m| outward_set_valid(GadgetKind::OrVertex, m).unwrap()).collect();
        assert_eq!(or, vec![0, 1, 2, 3, 4, 5, 6]);
        let and: Vec<u8> = (0..8).filter(|&m| outward_set_valid(GadgetKind::AndVertex, m).unwrap()).collect();
        assert_eq!(and, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn drawn_interiors_are_the_empty_outward_set() {
        for kind in [GadgetKind::OrVertex, GadgetKind::AndVertex] {
            assert_eq!(vertex_interior(kind, 0).unwrap(), blueprint(kind).initial_colors);
        }
    }
}
