//! A deliberately plain reachability oracle: a queue, a hash set of
//! explicit state vectors and direct adjacency lookups. It shares no code
//! with the packed search engine.

use std::collections::{HashSet, VecDeque};

use fasncl_core::fs::{ColorClassing, Configuration, FasInstance};
use fasncl_core::graph::VertexId;

use crate::VerifyError;

/// Cap used when callers do not choose one.
pub const DEFAULT_BRUTE_CAP: usize = 10_000_000;

#[derive(Debug, Clone, Copy)]
pub enum BruteMode<'a> {
    Labeled,
    Quotient(&'a ColorClassing),
}

/// Every state reachable from `from`: person per location when labeled,
/// class per location in quotient mode.
pub fn brute_force_fs(
    inst: &FasInstance,
    from: &Configuration,
    mode: BruteMode<'_>,
    cap: usize,
) -> Result<HashSet<Vec<u32>>, VerifyError> {
    let x = inst.locations();
    let y = inst.people();
    let n = inst.order();
    if from.len() != n {
        return Err(VerifyError::Input(format!("configuration has {} entries, instance has {n}", from.len())));
    }
    // In quotient mode a swap between classes a and b is legal iff some
    // people of those classes are friends; for a valid classing that is the
    // same for every pair of members.
    let friends = |a: u32, b: u32| -> bool {
        match mode {
            BruteMode::Labeled => y.has_edge(VertexId(a), VertexId(b)),
            BruteMode::Quotient(cc) => (0..n as u32).any(|p| {
                cc.class_of(VertexId(p)) == a
                    && (0..n as u32).any(|q| cc.class_of(VertexId(q)) == b && y.has_edge(VertexId(p), VertexId(q)))
            }),
        }
    };
    let start: Vec<u32> = match mode {
        BruteMode::Labeled => from.as_slice().to_vec(),
        BruteMode::Quotient(cc) => from.as_slice().iter().map(|&p| cc.class_of(VertexId(p))).collect(),
    };
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    let mut memo = std::collections::HashMap::new();
    while let Some(state) = queue.pop_front() {
        for &(a, b) in x.edges() {
            let (pa, pb) = (state[a.index()], state[b.index()]);
            if pa == pb {
                continue;
            }
            let ok = *memo.entry((pa.min(pb), pa.max(pb))).or_insert_with(|| friends(pa, pb));
            if !ok {
                continue;
            }
            let mut next = state.clone();
            next.swap(a.index(), b.index());
            if seen.contains(&next) {
                continue;
            }
            if seen.len() >= cap {
                return Err(VerifyError::CapExceeded(cap));
            }
            seen.insert(next.clone());
            queue.push_back(next);
        }
    }
    Ok(seen)
}
