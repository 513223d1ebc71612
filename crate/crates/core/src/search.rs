//! Exact breadth-first reachability over packed states.
//!
//! Layers are expanded in chunks that may run on the rayon pool, then merged
//! into the store sequentially in chunk order, so the stored order, the
//! status and the witness never depend on the thread count.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::store::{StateStore, NO_PARENT};

/// Stored-state cap used when callers do not choose one.
pub const DEFAULT_MAX_STATES: usize = 50_000_000;
/// Wall-clock cap used when callers do not choose one.
pub const DEFAULT_TIME_BUDGET: Duration = Duration::from_secs(600);

const CHUNK: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Reachable,
    Unreachable,
    /// A resource cap was hit before the question was settled.
    Limit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_states: usize,
    pub time_budget: Option<Duration>,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_states: DEFAULT_MAX_STATES,
            time_budget: Some(DEFAULT_TIME_BUDGET),
        }
    }
}

impl SearchLimits {
    pub fn states(max_states: usize) -> Self {
        SearchLimits {
            max_states,
            ..Default::default()
        }
    }
}

/// Outcome of a reachability query. `witness` is present iff the status is
/// [`Status::Reachable`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReachabilityResult<M> {
    pub status: Status,
    pub witness: Option<Vec<M>>,
    pub states_explored: usize,
    pub frontier_peak: usize,
}

impl<M> ReachabilityResult<M> {
    pub fn map_witness<N>(self, f: impl FnMut(M) -> N) -> ReachabilityResult<N> {
        ReachabilityResult {
            status: self.status,
            witness: self.witness.map(|w| w.into_iter().map(f).collect()),
            states_explored: self.states_explored,
            frontier_peak: self.frontier_peak,
        }
    }
}

/// A move-generating state space over packed states.
///
/// Moves are identified by a `u32`. Bidirectional search additionally
/// requires every move to be its own inverse.
pub trait StateSpace: Sync {
    fn width(&self) -> usize;

    /// Emits `(move id, child)` for every successor of `state`, in a
    /// deterministic order.
    fn expand<F: FnMut(u32, &[u64])>(&self, state: &[u64], emit: F);
}


pub(crate) struct Outcome {
    pub status: Status,
    pub path: Option<Vec<u32>>,
    pub frontier_peak: usize,
    pub store: StateStore,
}

struct Batch {
    parents: Vec<u32>,
    moves: Vec<u32>,
    children: Vec<u64>,
    goals: Vec<bool>,
}

fn expand_layer<S, G>(space: &S, store: &StateStore, lo: usize, hi: usize, goal: &G) -> Vec<Batch>
where
    S: StateSpace,
    G: Fn(&[u64]) -> bool + Sync,
{
    let width = space.width();
    let run = |start: usize| {
        let end = (start + CHUNK).min(hi);
        let mut batch = Batch {
            parents: Vec::new(),
            moves: Vec::new(),
            children: Vec::new(),
            goals: Vec::new(),
        };
        for idx in start..end {
            let parent = idx as u32;
            let grandparent = store.parent(parent);
            space.expand(store.state(parent), |mv, child| {
                debug_assert_eq!(child.len(), width);
                // Undoing the move that produced `parent` only rediscovers it.
                if grandparent.is_some_and(|g| store.state(g) == child) {
                    return;
                }
                batch.parents.push(parent);
                batch.moves.push(mv);
                batch.children.extend_from_slice(child);
                batch.goals.push(goal(child));
            });
        }
        batch
    };
    let starts: Vec<usize> = (lo..hi).step_by(CHUNK).collect();
    if starts.len() > 1 {
        starts.into_par_iter().map(run).collect()
    } else {
        starts.into_iter().map(run).collect()
    }
}

/// Single-source BFS until `goal` holds, the component is exhausted, or a
/// limit is hit. With a goal that never holds this enumerates the component.
pub(crate) fn bfs<S, G>(space: &S, start: &[u64], goal: G, limits: SearchLimits) -> Outcome
where
    S: StateSpace,
    G: Fn(&[u64]) -> bool + Sync,
{
    let started = Instant::now();
    let mut store = StateStore::new(space.width());
    store.insert(start, NO_PARENT, 0);
    let done = |store: StateStore, status, goal: Option<u32>, peak| Outcome {
        status,
        path: goal.map(|g| store.path_to(g)),
        frontier_peak: peak,
        store,
    };
    if goal(start) {
        return done(store, Status::Reachable, Some(0), 1);
    }
    if limits.max_states == 0 {
        return done(store, Status::Limit, None, 1);
    }

    let (mut lo, mut hi) = (0usize, 1usize);
    let mut peak = 1;
    while lo < hi {
        if limits.time_budget.is_some_and(|b| started.elapsed() > b) {
            return done(store, Status::Limit, None, peak);
        }
        let batches = expand_layer(space, &store, lo, hi, &goal);
        for batch in batches {
            let width = space.width();
            for (k, child) in batch.children.chunks_exact(width.max(1)).enumerate() {
                if store.find(child).is_some() {
                    continue;
                }
                if store.len() >= limits.max_states {
                    return done(store, Status::Limit, None, peak);
                }
                let (idx, _) = store.insert(child, batch.parents[k], batch.moves[k]);
                if batch.goals[k] {
                    return done(store, Status::Reachable, Some(idx), peak);
                }
            }
        }
        lo = hi;
        hi = store.len();
        peak = peak.max(hi - lo);
    }
    done(store, Status::Unreachable, None, peak)
}

/// Meet-in-the-middle BFS between two explicit states. Moves must be
/// involutions so the backward half of the witness can be replayed forwards.
pub(crate) fn bidirectional<S: StateSpace>(
    space: &S,
    start: &[u64],
    target: &[u64],
    limits: SearchLimits,
) -> (Status, Option<Vec<u32>>, usize, usize) {
    if start == target {
        return (Status::Reachable, Some(Vec::new()), 1, 1);
    }
    let started = Instant::now();
    let width = space.width();
    let mut sides = [StateStore::new(width), StateStore::new(width)];
    sides[0].insert(start, NO_PARENT, 0);
    sides[1].insert(target, NO_PARENT, 0);
    let mut layers = [(0usize, 1usize), (0usize, 1usize)];
    let mut peak = 1;
    let never = |_: &[u64]| false;

    loop {
        let total = sides[0].len() + sides[1].len();
        let (a, b) = layers[0];
        let (c, d) = layers[1];
        if a == b || c == d {
            return (Status::Unreachable, None, total, peak);
        }
        if limits.time_budget.is_some_and(|t| started.elapsed() > t) {
            return (Status::Limit, None, total, peak);
        }
        // Grow the side with the smaller frontier.
        let s = if b - a <= d - c { 0 } else { 1 };
        let o = 1 - s;
        let (lo, hi) = layers[s];
        let batches = expand_layer(space, &sides[s], lo, hi, &never);
        for batch in batches {
            for (k, child) in batch.children.chunks_exact(width.max(1)).enumerate() {
                if sides[s].find(child).is_some() {
                    continue;
                }
                if sides[0].len() + sides[1].len() >= limits.max_states {
                    let total = sides[0].len() + sides[1].len();
                    return (Status::Limit, None, total, peak);
                }
                let (idx, _) = sides[s].insert(child, batch.parents[k], batch.moves[k]);
                if let Some(meet) = sides[o].find(child) {
                    let (f_idx, b_idx) = if s == 0 { (idx, meet) } else { (meet, idx) };
                    let mut path = sides[0].path_to(f_idx);
                    let mut back = sides[1].path_to(b_idx);
                    back.reverse();
                    path.extend(back);
                    let total = sides[0].len() + sides[1].len();
                    return (Status::Reachable, Some(path), total, peak);
                }
            }
        }
        layers[s] = (hi, sides[s].len());
        peak = peak.max(layers[s].1 - layers[s].0);
    }
}
