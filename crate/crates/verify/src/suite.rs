//! Behavioural checks on single gadgets, by exhaustive scans of their
//! quotient state spaces.

use fasncl_core::fs::{explore, Component, SearchMode};
use fasncl_gadgets::assembly::decode_colors;
use fasncl_gadgets::direction::{outward_set_valid, vertex_interior, VertexAssembly};
use fasncl_gadgets::{blueprint, direction_of, edge_state, harness, Color, EdgeGadgetDirection, GadgetKind, Harness, PortScenario};
use serde::{Deserialize, Serialize};

use crate::VerifyError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetReport {
    pub kind: GadgetKind,
    pub checks: Vec<Check>,
}

impl GadgetReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.kind.name());
        for c in &self.checks {
            let mark = if c.passed { "pass" } else { "FAIL" };
            out.push_str(&format!("  [{mark}] {}: {}\n", c.name, c.detail));
        }
        out
    }
}

fn push(checks: &mut Vec<Check>, name: &str, passed: bool, detail: String) {
    checks.push(Check { name: name.to_string(), passed, detail });
}

fn scan(h: &Harness, cap: usize) -> Result<Component, VerifyError> {
    let comp = explore(&h.instance, &h.start, &SearchMode::Quotient(h.classing.clone()), cap)?;
    if !comp.is_complete() {
        return Err(VerifyError::CapExceeded(cap));
    }
    Ok(comp)
}

fn sealed_rigidity(kind: GadgetKind, cap: usize, checks: &mut Vec<Check>) -> Result<(), VerifyError> {
    let bp = blueprint(kind);
    let h = harness(&bp, &vec![PortScenario::Sealed; bp.ports.len()]);
    let comp = scan(&h, cap)?;
    push(checks, "sealed_rigidity", comp.len() == 1, format!("{} reachable color pattern(s)", comp.len()));
    Ok(())
}

fn heavy_census(pattern: &[u32]) -> [usize; 2] {
    let count = |c: Color| pattern.iter().filter(|&&v| v == c.index() as u32).count();
    [count(Color::Blue), count(Color::Red)]
}

/// Source on port 0, sink on port 1.
fn source_sink(kind: GadgetKind) -> (Harness, Color) {
    let bp = blueprint(kind);
    let heavy = bp.initial_colors[bp.named.expect("edge gadget").gamma as usize];
    (harness(&bp, &[PortScenario::Source(heavy), PortScenario::Sink]), heavy)
}

fn edge_checks(kind: GadgetKind, cap: usize, checks: &mut Vec<Check>) -> Result<(), VerifyError> {
    let bp = blueprint(kind);
    let named = bp.named.expect("edge gadget");
    let n = bp.len();
    let (h, heavy) = source_sink(kind);
    let hv = heavy.index() as u32;
    let comp = scan(&h, cap)?;
    let sink = h.corridor(1).expect("sink").locations.clone();

    let start = heavy_census(&comp.state(0));
    let conserved = comp.states().all(|s| heavy_census(&s) == start);
    push(checks, "conservation", conserved, format!("{} states, heavy census {start:?}", comp.len()));

    let mut released = 0usize;
    let mut locked = 0usize;
    let mut readings = [0usize; 3];
    for s in comp.states() {
        if sink.iter().any(|&v| s[v as usize] == hv) {
            released += 1;
            if s[named.alpha as usize] == hv {
                locked += 1;
            }
        }
        let slot = match direction_of(&bp, &decode_colors(&s[..n]))? {
            Some(EdgeGadgetDirection::TowardPort0) => 0,
            Some(EdgeGadgetDirection::TowardPort1) => 1,
            None => 2,
        };
        readings[slot] += 1;
    }
    push(checks, "release_at_sink", released > 0, format!("{released} states with a heavy token in the sink corridor"));
    push(
        checks,
        "locked_at_alpha",
        released > 0 && locked == released,
        format!("{locked} of {released} releasing states hold a heavy token at alpha"),
    );
    push(
        checks,
        "direction_readings",
        readings[0] > 0 && readings[1] > 0 && readings[2] > 0,
        format!("toward port 0: {}, toward port 1: {}, transitional: {}", readings[0], readings[1], readings[2]),
    );

    let quiet = harness(&bp, &[PortScenario::Sink, PortScenario::Sink]);
    let qcomp = scan(&quiet, cap)?;
    let corridor_locs: Vec<u32> = quiet.assembly.corridors().iter().flat_map(|c| c.locations.clone()).collect();
    let escaped = qcomp.states().filter(|s| corridor_locs.iter().any(|&v| s[v as usize] == hv)).count();
    push(checks, "no_source_no_release", escaped == 0, format!("{} states, {escaped} with a heavy token outside", qcomp.len()));

    let drawn = edge_state(kind, EdgeGadgetDirection::TowardPort0)?;
    let mirrored = edge_state(kind, EdgeGadgetDirection::TowardPort1)?;
    let reflected = (0..n).map(|v| drawn[reflect(v)]).collect::<Vec<_>>();
    push(
        checks,
        "migrated_state_is_reflection",
        mirrored == reflected,
        "placement after migration compared with the left-right reflection of the drawing".into(),
    );

    let (ok, detail) = renaming_isomorphism(cap)?;
    push(checks, "red_blue_isomorphism", ok, detail);
    Ok(())
}

/// Left-right reflection of the edge gadget: `v0..v7` and `v8..v17` reversed.
fn reflect(v: usize) -> usize {
    if v < 8 {
        7 - v
    } else {
        25 - v
    }
}

/// Compares the blue and red source/sink state graphs under the renaming
/// blue -> red, light blue -> light red, matching states by BFS index.
pub fn renaming_isomorphism(cap: usize) -> Result<(bool, String), VerifyError> {
    let (bh, _) = source_sink(GadgetKind::BlueEdge);
    let (rh, _) = source_sink(GadgetKind::RedEdge);
    let blue = scan(&bh, cap)?;
    let red = scan(&rh, cap)?;
    if blue.len() != red.len() {
        return Ok((false, format!("sizes differ: {} vs {}", blue.len(), red.len())));
    }
    let rename = |s: Vec<u32>| -> Vec<u32> {
        decode_colors(&s).into_iter().map(|c| c.blue_to_red().index() as u32).collect()
    };
    for i in 0..blue.len() {
        if rename(blue.state(i)) != red.state(i) {
            return Ok((false, format!("state {i} differs after renaming")));
        }
        if blue.successors(i) != red.successors(i) {
            return Ok((false, format!("successors of state {i} differ")));
        }
    }
    Ok((true, format!("{} states and their transitions correspond", blue.len())))
}

fn vertex_checks(kind: GadgetKind, cap: usize, checks: &mut Vec<Check>) -> Result<(), VerifyError> {
    let va = VertexAssembly::new(kind, PortScenario::Sealed)?;
    let (inst, start) = va.assembly.instance();
    let comp = explore(&inst, &start, &SearchMode::Quotient(va.assembly.classing()), cap)?;
    if !comp.is_complete() {
        return Err(VerifyError::CapExceeded(cap));
    }
    let mut seen = [0usize; 8];
    let census = heavy_census(&comp.state(0));
    let mut conserved = true;
    for s in comp.states() {
        seen[va.outward_mask(&s)? as usize] += 1;
        conserved &= heavy_census(&s) == census;
    }
    let masks: Vec<String> = (0..8).filter(|&m| seen[m] > 0).map(|m| format!("{m:03b}")).collect();
    let summary = format!("{} states; outward sets seen (port 2..0): {}", comp.len(), masks.join(" "));
    push(checks, "conservation", conserved, format!("heavy census {census:?}"));
    let realizable = (0..8u8).all(|m| (seen[m as usize] > 0) == outward_set_valid(kind, m).unwrap_or(false));
    push(checks, "outward_sets_match_vertex_rule", realizable, summary.clone());
    match kind {
        GadgetKind::OrVertex => {
            push(checks, "never_three_outward", seen[0b111] == 0, summary.clone());
            let pairs = [0b011, 0b101, 0b110].iter().all(|&m| seen[m] > 0);
            push(checks, "any_two_outward", pairs, summary);
        }
        GadgetKind::AndVertex => {
            push(checks, "blue_and_both_reds_never_outward", seen[0b111] == 0, summary.clone());
            push(
                checks,
                "blue_outward_excludes_red_outward",
                seen[0b101] == 0 && seen[0b110] == 0 && seen[0b111] == 0,
                summary.clone(),
            );
            push(checks, "mode_two_reds_released", seen[0b011] > 0, format!("{} states", seen[0b011]));
            push(checks, "mode_blue_released", seen[0b100] > 0, format!("{} states", seen[0b100]));
        }
        _ => unreachable!("vertex kinds only"),
    }
    let derived = (0..8u8)
        .filter(|&m| outward_set_valid(kind, m).unwrap_or(false))
        .all(|m| vertex_interior(kind, m).is_ok());
    push(checks, "interiors_derived", derived, "one canonical interior per realizable outward set".into());
    Ok(())
}

/// Runs every check that applies to `kind`.
pub fn gadget_suite(kind: GadgetKind, cap: usize) -> Result<GadgetReport, VerifyError> {
    let mut checks = Vec::new();
    sealed_rigidity(kind, cap, &mut checks)?;
    if kind.is_edge() {
        edge_checks(kind, cap, &mut checks)?;
    } else {
        vertex_checks(kind, cap, &mut checks)?;
    }
    Ok(GadgetReport { kind, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reflection_matches_blueprint_names() {
        let bp = blueprint(GadgetKind::BlueEdge);
        assert_eq!(bp.names[reflect(bp.location("v8").unwrap() as usize)], "v17");
        assert_eq!(bp.names[reflect(bp.location("v12").unwrap() as usize)], "v13");
        assert_eq!(bp.names[reflect(bp.location("v1").unwrap() as usize)], "v6");
    }
}
