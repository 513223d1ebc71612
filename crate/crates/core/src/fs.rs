//! Friends-and-strangers instances, swap semantics and reachability.
//!
//! A configuration places every person on exactly one location. Two people
//! may trade places when their locations are adjacent in the location graph
//! and they are friends in the people graph. The solvers here answer
//! reachability in the graph of configurations, either on labeled people or
//! on a color quotient where people of the same class are interchangeable.

use serde::{Deserialize, Serialize};

use crate::error::FsError;
use crate::graph::{SimpleGraph, VertexId};
use crate::search::{self, ReachabilityResult, SearchLimits, StateSpace, Status};
use crate::store::{Packer, StateStore};

/// A friends-and-strangers instance: locations `X` and people `Y` of equal
/// order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "InstanceGraphs", into = "InstanceGraphs")]
pub struct FasInstance {
    locations: SimpleGraph,
    people: SimpleGraph,
}

#[derive(Serialize, Deserialize)]
struct InstanceGraphs {
    #[serde(rename = "X")]
    x: SimpleGraph,
    #[serde(rename = "Y")]
    y: SimpleGraph,
}

impl TryFrom<InstanceGraphs> for FasInstance {
    type Error = FsError;
    fn try_from(g: InstanceGraphs) -> Result<Self, FsError> {
        FasInstance::new(g.x, g.y)
    }
}

impl From<FasInstance> for InstanceGraphs {
    fn from(i: FasInstance) -> Self {
        InstanceGraphs {
            x: i.locations,
            y: i.people,
        }
    }
}

impl FasInstance {
    pub fn new(locations: SimpleGraph, people: SimpleGraph) -> Result<Self, FsError> {
        if locations.order() != people.order() {
            return Err(FsError::OrderMismatch {
                locations: locations.order(),
                people: people.order(),
            });
        }
        Ok(FasInstance { locations, people })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.locations.order()
    }

    pub fn locations(&self) -> &SimpleGraph {
        &self.locations
    }

    pub fn people(&self) -> &SimpleGraph {
        &self.people
    }

    fn check(&self, c: &Configuration) -> Result<(), FsError> {
        if c.len() != self.order() {
            return Err(FsError::InvalidConfiguration(format!(
                "configuration has length {} but the instance has order {}",
                c.len(),
                self.order()
            )));
        }
        Ok(())
    }
}

/// A bijection from locations to people: position `i` holds the person
/// standing on location `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Configuration {
    assignment: Vec<u32>,
}

impl TryFrom<Vec<u32>> for Configuration {
    type Error = FsError;
    fn try_from(v: Vec<u32>) -> Result<Self, FsError> {
        Configuration::new(v)
    }
}

impl From<Configuration> for Vec<u32> {
    fn from(c: Configuration) -> Self {
        c.assignment
    }
}

impl Configuration {
    /// Validates that `assignment` is a permutation of `0..len`.
    pub fn new(assignment: Vec<u32>) -> Result<Self, FsError> {
        let n = assignment.len();
        let mut seen = vec![false; n];
        for &p in &assignment {
            let slot = seen.get_mut(p as usize).ok_or_else(|| {
                FsError::InvalidConfiguration(format!("person {p} out of range for order {n}"))
            })?;
            if std::mem::replace(slot, true) {
                return Err(FsError::InvalidConfiguration(format!(
                    "person {p} placed twice"
                )));
            }
        }
        Ok(Configuration { assignment })
    }

    pub fn identity(n: usize) -> Self {
        Configuration {
            assignment: (0..n as u32).collect(),
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    #[inline]
    pub fn person_at(&self, location: VertexId) -> VertexId {
        VertexId(self.assignment[location.index()])
    }

    pub fn location_of(&self, person: VertexId) -> Option<VertexId> {
        self.assignment
            .iter()
            .position(|&p| p == person.0)
            .map(VertexId::from)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.assignment
    }

    /// Locations where `self` and `other` place different people.
    pub fn differing_locations(&self, other: &Configuration) -> Vec<VertexId> {
        self.assignment
            .iter()
            .zip(&other.assignment)
            .enumerate()
            .filter(|(_, (a, b))| a != b)
            .map(|(i, _)| VertexId::from(i))
            .collect()
    }
}

/// Exchange of the people on two adjacent locations. Normalized so that
/// `loc_a < loc_b`; serialized as `[loc_a, loc_b]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[u32; 2]", into = "[u32; 2]")]
pub struct SwapMove {
    pub loc_a: VertexId,
    pub loc_b: VertexId,
}

impl SwapMove {
    pub fn new(a: impl Into<VertexId>, b: impl Into<VertexId>) -> Self {
        let (a, b) = (a.into(), b.into());
        if a <= b {
            SwapMove { loc_a: a, loc_b: b }
        } else {
            SwapMove { loc_a: b, loc_b: a }
        }
    }
}

impl From<[u32; 2]> for SwapMove {
    fn from(p: [u32; 2]) -> Self {
        SwapMove::new(p[0], p[1])
    }
}

impl From<SwapMove> for [u32; 2] {
    fn from(m: SwapMove) -> Self {
        [m.loc_a.0, m.loc_b.0]
    }
}

/// Partition of people into interchangeable classes.
///
/// Sound for quotient search only when every class is a clique of `Y` whose
/// members have identical friendships outside the pair; see
/// [`verify_color_classing`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorClassing {
    class_of: Vec<u32>,
    classes: usize,
}

impl ColorClassing {
    pub fn new(class_of: Vec<u32>) -> Self {
        let classes = class_of.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
        ColorClassing { class_of, classes }
    }

    /// Like [`ColorClassing::new`] but reserving at least `classes` ids.
    pub fn with_class_count(class_of: Vec<u32>, classes: usize) -> Self {
        let mut cc = ColorClassing::new(class_of);
        cc.classes = cc.classes.max(classes);
        cc
    }

    #[inline]
    pub fn class_of(&self, person: VertexId) -> u32 {
        self.class_of[person.index()]
    }

    pub fn classes(&self) -> usize {
        self.classes
    }

    pub fn len(&self) -> usize {
        self.class_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_of.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.class_of
    }

    /// Class-valued view of a configuration.
    pub fn pattern(&self, c: &Configuration) -> Vec<u32> {
        c.as_slice().iter().map(|&p| self.class_of[p as usize]).collect()
    }
}

/// True iff every class is a clique of `Y` and any two members of a class
/// have the same friends apart from each other.
pub fn verify_color_classing(inst: &FasInstance, cc: &ColorClassing) -> bool {
    classing_problem(inst, cc).is_none()
}

fn classing_problem(inst: &FasInstance, cc: &ColorClassing) -> Option<String> {
    let n = inst.order();
    if cc.len() != n {
        return Some(format!("classing covers {} people, instance has {n}", cc.len()));
    }
    let y = inst.people();
    let mut representative: Vec<Option<u32>> = vec![None; cc.classes()];
    for p in 0..n as u32 {
        let class = cc.class_of[p as usize] as usize;
        let Some(rep) = representative[class] else {
            representative[class] = Some(p);
            continue;
        };
        // Comparing against one representative suffices: the relation
        // "adjacent with matching outside neighborhoods" is transitive here.
        if !y.has_edge(VertexId(rep), VertexId(p)) {
            return Some(format!("people {rep} and {p} share class {class} but are strangers"));
        }
        let strip = |a: u32, b: u32| -> Vec<VertexId> {
            y.neighbors(VertexId(a))
                .expect("in range")
                .iter()
                .copied()
                .filter(|&v| v != VertexId(b))
                .collect()
        };
        if strip(rep, p) != strip(p, rep) {
            return Some(format!(
                "people {rep} and {p} share class {class} but have different friends"
            ));
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum SearchMode {
    #[default]
    Labeled,
    Quotient(ColorClassing),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SearchOptions {
    pub mode: SearchMode,
    pub limits: SearchLimits,
    pub bidirectional: bool,
}

impl SearchOptions {
    pub fn labeled() -> Self {
        SearchOptions::default()
    }

    pub fn quotient(cc: ColorClassing) -> Self {
        SearchOptions {
            mode: SearchMode::Quotient(cc),
            ..Default::default()
        }
    }

    pub fn with_max_states(mut self, max_states: usize) -> Self {
        self.limits.max_states = max_states;
        self
    }

    pub fn with_bidirectional(mut self, on: bool) -> Self {
        self.bidirectional = on;
        self
    }
}

/// Every legal swap in `c`, ordered by `(loc_a, loc_b)`.
pub fn legal_swaps(inst: &FasInstance, c: &Configuration) -> Result<Vec<SwapMove>, FsError> {
    inst.check(c)?;
    let y = inst.people();
    Ok(inst
        .locations()
        .edges()
        .iter()
        .filter(|&&(a, b)| y.has_edge(c.person_at(a), c.person_at(b)))
        .map(|&(a, b)| SwapMove { loc_a: a, loc_b: b })
        .collect())
}

/// Applies `m` without checking legality.
pub fn apply_swap(c: &Configuration, m: SwapMove) -> Configuration {
    let mut next = c.clone();
    next.assignment.swap(m.loc_a.index(), m.loc_b.index());
    next
}

/// Applies `m` after checking that it is a legal swap in `c`.
pub fn apply_swap_checked(
    inst: &FasInstance,
    c: &Configuration,
    m: SwapMove,
) -> Result<Configuration, FsError> {
    inst.check(c)?;
    let (a, b) = (m.loc_a, m.loc_b);
    let illegal = |reason| FsError::IllegalSwap { a: a.0, b: b.0, reason };
    if a.index() >= inst.order() || b.index() >= inst.order() {
        return Err(illegal("location out of range"));
    }
    if a == b {
        return Err(illegal("locations coincide"));
    }
    if !inst.locations().has_edge(a, b) {
        return Err(illegal("locations are not adjacent"));
    }
    if !inst.people().has_edge(c.person_at(a), c.person_at(b)) {
        return Err(illegal("people are strangers"));
    }
    Ok(apply_swap(c, m))
}

/// Replays `witness` from `from` with checked moves.
pub fn replay(
    inst: &FasInstance,
    from: &Configuration,
    witness: &[SwapMove],
) -> Result<Configuration, FsError> {
    witness
        .iter()
        .try_fold(from.clone(), |c, &m| apply_swap_checked(inst, &c, m))
}

/// Packed search space over location-indexed values: person ids in labeled
/// mode, class ids in quotient mode.
pub(crate) struct SwapSpace {
    packer: Packer,
    moves: Vec<(u32, u32)>,
    values: usize,
    friends: Vec<bool>,
}

impl SwapSpace {
    pub(crate) fn new(inst: &FasInstance, mode: &SearchMode) -> Result<Self, FsError> {
        let n = inst.order();
        let y = inst.people();
        let (values, friends) = match mode {
            SearchMode::Labeled => {
                let mut f = vec![false; n * n];
                for &(a, b) in y.edges() {
                    f[a.index() * n + b.index()] = true;
                    f[b.index() * n + a.index()] = true;
                }
                (n, f)
            }
            SearchMode::Quotient(cc) => {
                if let Some(problem) = classing_problem(inst, cc) {
                    return Err(FsError::InvalidClassing(problem));
                }
                let k = cc.classes();
                let mut f = vec![false; k * k];
                for &(a, b) in y.edges() {
                    let (ca, cb) = (cc.class_of(a) as usize, cc.class_of(b) as usize);
                    // Same-class exchanges leave the pattern unchanged.
                    if ca != cb {
                        f[ca * k + cb] = true;
                        f[cb * k + ca] = true;
                    }
                }
                (k, f)
            }
        };
        Ok(SwapSpace {
            packer: Packer::new(n, values.max(1)),
            moves: inst
                .locations()
                .edges()
                .iter()
                .map(|&(a, b)| (a.0, b.0))
                .collect(),
            values,
            friends,
        })
    }

    pub(crate) fn swap_move(&self, id: u32) -> SwapMove {
        let (a, b) = self.moves[id as usize];
        SwapMove::new(a, b)
    }

    fn legal(&self, va: u32, vb: u32) -> bool {
        self.friends[va as usize * self.values + vb as usize]
    }
}

impl StateSpace for SwapSpace {
    fn width(&self) -> usize {
        self.packer.width()
    }

    fn expand<F: FnMut(u32, &[u64])>(&self, state: &[u64], mut emit: F) {
        let mut child = state.to_vec();
        for (id, &(a, b)) in self.moves.iter().enumerate() {
            let va = self.packer.get(state, a as usize);
            let vb = self.packer.get(state, b as usize);
            if va != vb && self.legal(va, vb) {
                self.packer.set(&mut child, a as usize, vb);
                self.packer.set(&mut child, b as usize, va);
                emit(id as u32, &child);
                self.packer.set(&mut child, a as usize, va);
                self.packer.set(&mut child, b as usize, vb);
            }
        }
    }
}

fn values_of(mode: &SearchMode, c: &Configuration) -> Vec<u32> {
    match mode {
        SearchMode::Labeled => c.as_slice().to_vec(),
        SearchMode::Quotient(cc) => cc.pattern(c),
    }
}

fn finish(space: &SwapSpace, status: Status, path: Option<Vec<u32>>, explored: usize, peak: usize) -> ReachabilityResult<SwapMove> {
    ReachabilityResult {
        status,
        witness: path.map(|p| p.into_iter().map(|id| space.swap_move(id)).collect()),
        states_explored: explored,
        frontier_peak: peak,
    }
}

/// Configuration-to-configuration reachability.
///
/// In quotient mode the question is whether the class pattern of `to` is
/// reachable from the class pattern of `from`; the witness then replays on
/// `from` to a configuration with the same pattern as `to`.
pub fn solve_c2c(
    inst: &FasInstance,
    from: &Configuration,
    to: &Configuration,
    opts: &SearchOptions,
) -> Result<ReachabilityResult<SwapMove>, FsError> {
    inst.check(from)?;
    inst.check(to)?;
    let space = SwapSpace::new(inst, &opts.mode)?;
    let start = space.packer.encode(&values_of(&opts.mode, from));
    let target = space.packer.encode(&values_of(&opts.mode, to));
    if opts.bidirectional {
        let (status, path, explored, peak) =
            search::bidirectional(&space, &start, &target, opts.limits);
        return Ok(finish(&space, status, path, explored, peak));
    }
    let out = search::bfs(&space, &start, |s| s == target.as_slice(), opts.limits);
    Ok(finish(&space, out.status, out.path, out.store.len(), out.frontier_peak))
}

/// Searches for any configuration whose location values satisfy `goal`.
///
/// `goal` sees person ids per location in labeled mode and class ids in
/// quotient mode. Unidirectional only.
pub fn solve_until<G>(
    inst: &FasInstance,
    from: &Configuration,
    opts: &SearchOptions,
    goal: G,
) -> Result<ReachabilityResult<SwapMove>, FsError>
where
    G: Fn(&[u32]) -> bool + Sync,
{
    inst.check(from)?;
    if opts.bidirectional {
        return Err(FsError::BidirectionalWithoutTarget);
    }
    let space = SwapSpace::new(inst, &opts.mode)?;
    let start = space.packer.encode(&values_of(&opts.mode, from));
    let packer = space.packer;
    let out = search::bfs(
        &space,
        &start,
        |s| goal(&packer.decode(s)),
        opts.limits,
    );
    Ok(finish(&space, out.status, out.path, out.store.len(), out.frontier_peak))
}

/// Can person `p` reach location `t`? In quotient mode this asks whether
/// some member of `p`'s class can stand on `t`.
pub fn solve_person_to_location(
    inst: &FasInstance,
    from: &Configuration,
    person: VertexId,
    target: VertexId,
    opts: &SearchOptions,
) -> Result<ReachabilityResult<SwapMove>, FsError> {
    let n = inst.order();
    for v in [person, target] {
        if v.index() >= n {
            return Err(FsError::OutOfRange { vertex: v.0, order: n });
        }
    }
    let wanted = match &opts.mode {
        SearchMode::Labeled => person.0,
        SearchMode::Quotient(cc) => {
            if cc.len() != n {
                return Err(FsError::InvalidClassing(format!(
                    "classing covers {} people, instance has {n}",
                    cc.len()
                )));
            }
            cc.class_of(person)
        }
    };
    let t = target.index();
    let opts = SearchOptions {
        bidirectional: false,
        ..opts.clone()
    };
    solve_until(inst, from, &opts, |values| values[t] == wanted)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    /// `Unreachable` means the component was enumerated exhaustively.
    pub status: Status,
    /// Exact size when exhaustive, otherwise the number stored before the cap.
    pub size: usize,
    /// Number of configuration-graph edges inside the component (moves that
    /// change the state), counted when exhaustive.
    pub swap_edges: Option<usize>,
}

/// All states reachable from a configuration, in BFS order.
pub struct Component {
    packer: Packer,
    store: StateStore,
    space: SwapSpace,
    complete: bool,
}

impl Component {
    pub fn len(&self) -> usize {
        self.store.len()
    }

    pub fn is_empty(&self) -> bool {
        self.store.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Decoded states (person or class id per location), in BFS order.
    pub fn states(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        self.store.iter().map(|s| self.packer.decode(s))
    }

    pub fn state(&self, idx: usize) -> Vec<u32> {
        self.packer.decode(self.store.state(idx as u32))
    }

    /// Index of a decoded state if it belongs to the component.
    pub fn index_of(&self, values: &[u32]) -> Option<usize> {
        if values.len() != self.packer.len() {
            return None;
        }
        self.store
            .find(&self.packer.encode(values))
            .map(|i| i as usize)
    }

    pub fn contains(&self, values: &[u32]) -> bool {
        self.index_of(values).is_some()
    }

    /// Swaps leading from the start state to state `idx`.
    pub fn path_to(&self, idx: usize) -> Vec<SwapMove> {
        self.store
            .path_to(idx as u32)
            .into_iter()
            .map(|id| self.space.swap_move(id))
            .collect()
    }

    /// Successors of state `idx` as `(move, successor index)`; every
    /// successor is inside the component when it is complete.
    pub fn successors(&self, idx: usize) -> Vec<(SwapMove, Option<usize>)> {
        let mut out = Vec::new();
        self.space.expand(self.store.state(idx as u32), |id, child| {
            out.push((
                self.space.swap_move(id),
                self.store.find(child).map(|i| i as usize),
            ));
        });
        out
    }
}

/// Enumerates the component of `from` up to `cap` stored states.
pub fn explore(
    inst: &FasInstance,
    from: &Configuration,
    mode: &SearchMode,
    cap: usize,
) -> Result<Component, FsError> {
    inst.check(from)?;
    let space = SwapSpace::new(inst, mode)?;
    let start = space.packer.encode(&values_of(mode, from));
    let out = search::bfs(&space, &start, |_| false, SearchLimits::states(cap));
    Ok(Component {
        packer: space.packer,
        complete: out.status == Status::Unreachable,
        store: out.store,
        space,
    })
}

pub fn enumerate_component(
    inst: &FasInstance,
    from: &Configuration,
    mode: &SearchMode,
    cap: usize,
) -> Result<ComponentReport, FsError> {
    if cap == 0 {
        return Err(FsError::InvalidConfiguration("component cap must be at least 1".into()));
    }
    let comp = explore(inst, from, mode, cap)?;
    if !comp.is_complete() {
        return Ok(ComponentReport {
            status: Status::Limit,
            size: comp.len(),
            swap_edges: None,
        });
    }
    let mut directed = 0usize;
    for s in comp.store.iter() {
        comp.space.expand(s, |_, _| directed += 1);
    }
    Ok(ComponentReport {
        status: Status::Unreachable,
        size: comp.len(),
        swap_edges: Some(directed / 2),
    })
}
