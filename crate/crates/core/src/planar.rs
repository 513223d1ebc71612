//! Planarity test for small graphs.
//!
//! Each biconnected block is embedded face by face (Demoucron, Malgrange and
//! Pertuiset): start from a cycle, repeatedly pick a fragment of the
//! not-yet-embedded graph, and route a path of it through a face that
//! contains all of its attachment vertices. A fragment with no such face is a
//! witness of non-planarity. Quadratic-ish, which is plenty below the cap.

use std::collections::{BTreeSet, VecDeque};

use crate::error::PlanarityError;
use crate::graph::SimpleGraph;

/// Default order above which [`is_planar_small`] refuses to answer.
pub const DEFAULT_PLANARITY_CAP: usize = 256;

/// True iff `g` has no subdivision of K5 or K3,3, for graphs with at most
/// [`DEFAULT_PLANARITY_CAP`] vertices.
pub fn is_planar_small(g: &SimpleGraph) -> Result<bool, PlanarityError> {
    is_planar_with_cap(g, DEFAULT_PLANARITY_CAP)
}

pub fn is_planar_with_cap(g: &SimpleGraph, cap: usize) -> Result<bool, PlanarityError> {
    let n = g.order();
    if n > cap {
        return Err(PlanarityError::TooLarge { order: n, cap });
    }
    if n >= 3 && g.edge_count() > 3 * n - 6 {
        return Ok(false);
    }
    let adjacency: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            g.neighbors(v.into())
                .expect("in range")
                .iter()
                .map(|u| u.index())
                .collect()
        })
        .collect();
    for block in biconnected_blocks(&adjacency) {
        if !block_is_planar(&block) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Edge sets of the biconnected blocks, each as a list of `(u, v)` pairs.
fn biconnected_blocks(adj: &[Vec<usize>]) -> Vec<Vec<(usize, usize)>> {
    let n = adj.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut blocks = Vec::new();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        // (vertex, parent, next neighbor index)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        while let Some(&mut (v, parent, ref mut next)) = stack.last_mut() {
            if *next < adj[v].len() {
                let u = adj[v][*next];
                *next += 1;
                if disc[u] == usize::MAX {
                    edge_stack.push((v, u));
                    disc[u] = timer;
                    low[u] = timer;
                    timer += 1;
                    stack.push((u, v, 0));
                } else if u != parent && disc[u] < disc[v] {
                    edge_stack.push((v, u));
                    low[v] = low[v].min(disc[u]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(e);
                            if e == (p, v) {
                                break;
                            }
                        }
                        blocks.push(block);
                    }
                }
            }
        }
    }
    blocks
}

fn block_is_planar(block: &[(usize, usize)]) -> bool {
    // Relabel the block densely.
    let mut verts: Vec<usize> = block.iter().flat_map(|&(a, b)| [a, b]).collect();
    verts.sort_unstable();
    verts.dedup();
    let n = verts.len();
    if n < 5 {
        return true;
    }
    let m = block.len();
    if m > 3 * n - 6 {
        return false;
    }
    let id = |v: usize| verts.binary_search(&v).expect("block vertex");
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in block {
        let (a, b) = (id(a), id(b));
        adj[a].push(b);
        adj[b].push(a);
    }
    for list in &mut adj {
        list.sort_unstable();
    }

    let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    let mut in_h = vec![false; n];
    let mut embedded: BTreeSet<(usize, usize)> = BTreeSet::new();

    let cycle = find_cycle(&adj);
    for (i, &v) in cycle.iter().enumerate() {
        in_h[v] = true;
        embedded.insert(key(v, cycle[(i + 1) % cycle.len()]));
    }
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle];

    while embedded.len() < m {
        let fragments = fragments(&adj, &in_h, &embedded);
        let mut choice: Option<(usize, usize)> = None;
        for (fi, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(_, face)| frag.attachments.iter().all(|a| face.contains(a)))
                .map(|(i, _)| i)
                .collect();
            match admissible.len() {
                0 => return false,
                1 => {
                    choice = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = choice.expect("at least one fragment remains");
        let path = fragment_path(&adj, &in_h, &fragments[fi]);

        for w in path.windows(2) {
            embedded.insert(key(w[0], w[1]));
        }
        for &v in &path {
            in_h[v] = true;
        }
        let face = faces.swap_remove(face_idx);
        let (a, b) = (path[0], *path.last().expect("nonempty path"));
        let i = face.iter().position(|&v| v == a).expect("attachment on face");
        let j = face.iter().position(|&v| v == b).expect("attachment on face");
        let interior = &path[1..path.len() - 1];
        let walk = |from: usize, to: usize| {
            let mut out = Vec::new();
            let mut k = from;
            loop {
                out.push(face[k]);
                if k == to {
                    break;
                }
                k = (k + 1) % face.len();
            }
            out
        };
        let mut first = walk(i, j);
        first.extend(interior.iter().rev());
        let mut second = walk(j, i);
        second.extend(interior.iter());
        faces.push(first);
        faces.push(second);
    }
    true
}

struct Fragment {
    attachments: Vec<usize>,
    /// Vertices outside the embedded part; empty for a chord.
    interior: Vec<usize>,
    chord: Option<(usize, usize)>,
}

fn fragments(adj: &[Vec<usize>], in_h: &[bool], embedded: &BTreeSet<(usize, usize)>) -> Vec<Fragment> {
    let n = adj.len();
    let mut out = Vec::new();
    for a in 0..n {
        if !in_h[a] {
            continue;
        }
        for &b in &adj[a] {
            if a < b && in_h[b] && !embedded.contains(&(a, b)) {
                out.push(Fragment {
                    attachments: vec![a, b],
                    interior: Vec::new(),
                    chord: Some((a, b)),
                });
            }
        }
    }
    let mut seen = vec![false; n];
    for s in 0..n {
        if in_h[s] || seen[s] {
            continue;
        }
        let mut interior = Vec::new();
        let mut attachments = BTreeSet::new();
        let mut queue = VecDeque::from([s]);
        seen[s] = true;
        while let Some(v) = queue.pop_front() {
            interior.push(v);
            for &u in &adj[v] {
                if in_h[u] {
                    attachments.insert(u);
                } else if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        out.push(Fragment {
            attachments: attachments.into_iter().collect(),
            interior,
            chord: None,
        });
    }
    out
}

/// A path through the fragment between two distinct attachment vertices.
fn fragment_path(adj: &[Vec<usize>], in_h: &[bool], frag: &Fragment) -> Vec<usize> {
    if let Some((a, b)) = frag.chord {
        return vec![a, b];
    }
    let start = frag.attachments[0];
    let inner: BTreeSet<usize> = frag.interior.iter().copied().collect();
    let first = *adj[start]
        .iter()
        .find(|u| inner.contains(u))
        .expect("attachment touches the fragment");
    let mut parent = vec![usize::MAX; adj.len()];
    parent[first] = first;
    let mut queue = VecDeque::from([first]);
    while let Some(v) = queue.pop_front() {
        if let Some(&end) = adj[v].iter().find(|&&u| in_h[u] && u != start) {
            let mut path = vec![end];
            let mut cur = v;
            loop {
                path.push(cur);
                if cur == first {
                    break;
                }
                cur = parent[cur];
            }
            path.push(start);
            path.reverse();
            return path;
        }
        for &u in &adj[v] {
            if inner.contains(&u) && parent[u] == usize::MAX {
                parent[u] = v;
                queue.push_back(u);
            }
        }
    }
    unreachable!("a fragment of a biconnected block has two attachments")
}

/// Any cycle of a biconnected graph with at least three vertices.
fn find_cycle(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    depth[0] = 0;
    let mut stack = vec![(0usize, 0usize)];
    while let Some(&mut (v, ref mut next)) = stack.last_mut() {
        if *next == adj[v].len() {
            stack.pop();
            continue;
        }
        let u = adj[v][*next];
        *next += 1;
        if depth[u] == usize::MAX {
            depth[u] = depth[v] + 1;
            parent[u] = v;
            stack.push((u, 0));
        } else if u != parent[v] && depth[u] < depth[v] {
            let mut cycle = vec![v];
            let mut cur = v;
            while cur != u {
                cur = parent[cur];
                cycle.push(cur);
            }
            return cycle;
        }
    }
    unreachable!("biconnected block without a cycle")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Wagner: planar iff neither K5 nor K3,3 is a minor. Brute force over
    /// all assignments of vertices to branch sets (or deletion).
    fn has_minor(g: &SimpleGraph, h: &SimpleGraph) -> bool {
        let n = g.order();
        let k = h.order();
        if n < k {
            return false;
        }
        let mut assign = vec![0usize; n];
        let total = (k + 1).pow(n as u32);
        'outer: for code in 0..total {
            let mut c = code;
            for slot in assign.iter_mut() {
                *slot = c % (k + 1);
                c /= k + 1;
            }
            // Symmetry break: branch set i's smallest member must precede set i+1's
            // only when the target is vertex-transitive enough; skip it for safety.
            for b in 0..k {
                let members: Vec<usize> = (0..n).filter(|&v| assign[v] == b).collect();
                if members.is_empty() {
                    continue 'outer;
                }
                let mut seen = vec![false; n];
                let mut stack = vec![members[0]];
                seen[members[0]] = true;
                let mut count = 0;
                while let Some(v) = stack.pop() {
                    count += 1;
                    for u in g.neighbors(v.into()).unwrap() {
                        if assign[u.index()] == b && !seen[u.index()] {
                            seen[u.index()] = true;
                            stack.push(u.index());
                        }
                    }
                }
                if count != members.len() {
                    continue 'outer;
                }
            }
            let connected = |x: usize, y: usize| {
                g.edges().iter().any(|&(a, b)| {
                    let (sa, sb) = (assign[a.index()], assign[b.index()]);
                    (sa == x && sb == y) || (sa == y && sb == x)
                })
            };
            if h.edges().iter().all(|&(x, y)| connected(x.index(), y.index())) {
                return true;
            }
        }
        false
    }

    fn oracle_planar(g: &SimpleGraph) -> bool {
        !has_minor(g, &SimpleGraph::complete(5))
            && !has_minor(g, &SimpleGraph::complete_bipartite(3, 3))
    }

    fn petersen() -> SimpleGraph {
        let mut e = Vec::new();
        for i in 0..5u32 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((i + 5, (i + 2) % 5 + 5));
        }
        SimpleGraph::new(10, e).unwrap()
    }

    fn grid(w: u32, h: u32) -> SimpleGraph {
        let mut e = Vec::new();
        for y in 0..h {
            for x in 0..w {
                let v = y * w + x;
                if x + 1 < w {
                    e.push((v, v + 1));
                }
                if y + 1 < h {
                    e.push((v, v + w));
                }
            }
        }
        SimpleGraph::new((w * h) as usize, e).unwrap()
    }

    #[test]
    fn kuratowski_examples() {
        assert!(is_planar_small(&SimpleGraph::complete(4)).unwrap());
        assert!(!is_planar_small(&SimpleGraph::complete(5)).unwrap());
        assert!(!is_planar_small(&SimpleGraph::complete_bipartite(3, 3)).unwrap());
        assert!(is_planar_small(&SimpleGraph::complete_bipartite(2, 7)).unwrap());
        assert!(!is_planar_small(&petersen()).unwrap());
        assert!(is_planar_small(&grid(12, 12)).unwrap());
        assert!(is_planar_small(&SimpleGraph::empty(0)).unwrap());
    }

    #[test]
    fn subdivided_k33_is_nonplanar() {
        // K3,3 with every edge subdivided once: 6 + 9 vertices, max degree 3.
        let mut e = Vec::new();
        let mut next = 6u32;
        for a in 0..3u32 {
            for b in 3..6u32 {
                e.push((a, next));
                e.push((next, b));
                next += 1;
            }
        }
        let g = SimpleGraph::new(next as usize, e).unwrap();
        assert!(!is_planar_small(&g).unwrap());
    }

    #[test]
    fn cap_is_reported_not_guessed() {
        let g = SimpleGraph::path(300);
        assert_eq!(
            is_planar_small(&g),
            Err(PlanarityError::TooLarge { order: 300, cap: 256 })
        );
        assert!(is_planar_with_cap(&g, 300).unwrap());
    }

    #[test]
    fn oracle_sanity() {
        assert!(!oracle_planar(&SimpleGraph::complete(5)));
        assert!(!oracle_planar(&SimpleGraph::complete_bipartite(3, 3)));
        assert!(oracle_planar(&SimpleGraph::complete(4)));
    }

    fn arb_small_graph() -> impl Strategy<Value = SimpleGraph> {
        (5usize..=7, 0.3f64..0.9).prop_flat_map(|(n, p)| {
            let pairs = n * (n - 1) / 2;
            proptest::collection::vec(0.0f64..1.0, pairs).prop_map(move |r| {
                let mut edges = Vec::new();
                let mut k = 0;
                for a in 0..n as u32 {
                    for b in a + 1..n as u32 {
                        if r[k] < p {
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
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn agrees_with_minor_oracle(g in arb_small_graph()) {
            prop_assert_eq!(is_planar_small(&g).unwrap(), oracle_planar(&g));
        }
    }
}
