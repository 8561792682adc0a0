//! Immutable simple undirected graphs and the structural primitives the
//! rest of the crate consumes: girth, distances, balls, degeneracy orderings,
//! greedy independent sets, induced subgraphs, and the Moore bound.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use crate::error::Error;
use crate::Result;

/// Deterministically ordered vertex set.
pub type VertexSet = BTreeSet<usize>;

/// Immutable simple undirected graph on dense vertex ids `0..n`.
///
/// Neighbor lists are sorted ascending, so two graphs are equal iff their
/// adjacency vectors compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Build from an edge list. Duplicate edges collapse; self-loops are
    /// rejected. `n` may exceed the largest endpoint (isolated vertices).
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut max_id = 0;
        for &(u, v) in edges {
            if u == v {
                return Err(Error::InvalidInput(format!("self-loop at vertex {u}")));
            }
            max_id = max_id.max(u).max(v);
        }
        let n = if edges.is_empty() { n } else { n.max(max_id + 1) };
        let mut set: BTreeSet<(usize, usize)> = BTreeSet::new();
        for &(u, v) in edges {
            set.insert((u.min(v), u.max(v)));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &set {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { adj, m: set.len() })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        0..self.adj.len()
    }

    /// Edges as ordered pairs `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn avg_degree(&self) -> f64 {
        if self.n() == 0 {
            0.0
        } else {
            2.0 * self.m as f64 / self.n() as f64
        }
    }

    pub fn is_complete(&self) -> bool {
        self.n() >= 1 && self.m == self.n() * (self.n() - 1) / 2
    }

    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return true;
        }
        let mut seen = vec![false; self.n()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n()
    }

    /// BFS distances from `src`, `usize::MAX` when unreachable.
    pub fn bfs_distances(&self, src: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Serialize to the edge-list text format.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "nodes {}", self.n());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

/// Parse the edge-list text format: optional leading `nodes N`, one `u v`
/// pair per line, `#` comments ignored, duplicate edges collapsed.
pub fn load_graph(text: &str) -> Result<Graph> {
    let mut declared = 0usize;
    let mut edges = Vec::new();
    let mut saw_nodes = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace();
        let first = it.next().unwrap();
        if first == "nodes" {
            if saw_nodes || !edges.is_empty() {
                return Err(Error::Parse {
                    line: idx + 1,
                    msg: "nodes line must come first".into(),
                });
            }
            saw_nodes = true;
            declared = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or(Error::Parse {
                    line: idx + 1,
                    msg: "expected `nodes N`".into(),
                })?;
            if it.next().is_some() {
                return Err(Error::Parse {
                    line: idx + 1,
                    msg: "trailing tokens after node count".into(),
                });
            }
            continue;
        }
        let u: usize = first.parse().map_err(|_| Error::Parse {
            line: idx + 1,
            msg: format!("bad vertex id `{first}`"),
        })?;
        let v: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or(Error::Parse {
                line: idx + 1,
                msg: "expected two vertex ids".into(),
            })?;
        if it.next().is_some() {
            return Err(Error::Parse {
                line: idx + 1,
                msg: "trailing tokens after edge".into(),
            });
        }
        edges.push((u, v));
    }
    Graph::from_edges(declared, &edges)
}

/// Length of the shortest cycle, or `None` for forests.
///
/// Per-vertex BFS with early cutoff at the current best: from root `r`, a
/// non-tree edge touching depth-`d` vertices closes a cycle of length at
/// most `2d + 1`, and any cycle is seen from its closest root.
pub fn girth(g: &Graph) -> Option<usize> {
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; g.n()];
    let mut parent = vec![usize::MAX; g.n()];
    let mut touched: Vec<usize> = Vec::new();
    for root in 0..g.n() {
        touched.clear();
        dist[root] = 0;
        parent[root] = usize::MAX;
        touched.push(root);
        let mut queue = VecDeque::from([root]);
        'bfs: while let Some(u) = queue.pop_front() {
            // No shorter cycle can be found past this depth.
            if best != usize::MAX && 2 * dist[u] + 1 >= best {
                break;
            }
            for &w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    touched.push(w);
                    queue.push_back(w);
                } else if w != parent[u] && dist[w] >= dist[u] {
                    let cycle = dist[u] + dist[w] + 1;
                    if cycle < best {
                        best = cycle;
                        if best == 3 {
                            break 'bfs;
                        }
                    }
                }
            }
        }
        for &v in &touched {
            dist[v] = usize::MAX;
            parent[v] = usize::MAX;
        }
        if best == 3 {
            break;
        }
    }
    (best != usize::MAX).then_some(best)
}

/// BFS distance between two vertices, `None` if disconnected.
pub fn distance(g: &Graph, u: usize, v: usize) -> Result<Option<usize>> {
    if u >= g.n() || v >= g.n() {
        return Err(Error::InvalidInput(format!(
            "vertex out of range: {u} or {v} >= {}",
            g.n()
        )));
    }
    let d = g.bfs_distances(u)[v];
    Ok((d != usize::MAX).then_some(d))
}

/// All vertices at distance at most `radius` from `center`.
pub fn ball(g: &Graph, center: usize, radius: usize) -> Result<VertexSet> {
    if center >= g.n() {
        return Err(Error::InvalidInput(format!(
            "vertex out of range: {center} >= {}",
            g.n()
        )));
    }
    let mut out = VertexSet::new();
    let mut dist = vec![usize::MAX; g.n()];
    dist[center] = 0;
    out.insert(center);
    let mut queue = VecDeque::from([center]);
    while let Some(u) = queue.pop_front() {
        if dist[u] == radius {
            continue;
        }
        for &w in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                out.insert(w);
                queue.push_back(w);
            }
        }
    }
    Ok(out)
}

/// A min-degree peeling order together with the degeneracy it certifies.
#[derive(Debug, Clone)]
pub struct DegeneracyOrdering {
    /// Removal order; every vertex has at most `degeneracy` neighbors later
    /// in this order.
    pub order: Vec<usize>,
    pub degeneracy: usize,
    /// `position[v]` = index of `v` in `order`.
    pub position: Vec<usize>,
}

impl DegeneracyOrdering {
    /// Number of neighbors of `v` placed after `v` in the order.
    pub fn right_degree(&self, g: &Graph, v: usize) -> usize {
        g.neighbors(v)
            .iter()
            .filter(|&&w| self.position[w] > self.position[v])
            .count()
    }
}

/// Repeated minimum-degree removal, ties broken by lowest vertex id.
/// The reported degeneracy is the maximum residual degree at removal time,
/// which the peeling argument makes minimal over all orderings.
pub fn degeneracy_ordering(g: &Graph) -> DegeneracyOrdering {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    // Bucket queue over residual degrees; each bucket is a BTreeSet so the
    // lowest-id tie-break is by construction.
    let maxd = deg.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); maxd + 1];
    for v in 0..n {
        buckets[deg[v]].insert(v);
    }
    let mut order = Vec::with_capacity(n);
    let mut k = 0;
    let mut cursor = 0usize;
    for _ in 0..n {
        while cursor < buckets.len() && buckets[cursor].is_empty() {
            cursor += 1;
        }
        // Removing a neighbor can only lower degrees, so rescan from 0 when
        // the cursor overshoots.
        if cursor > 0 {
            let lowest = (0..cursor).find(|&d| !buckets[d].is_empty());
            if let Some(d) = lowest {
                cursor = d;
            }
        }
        let v = *buckets[cursor].iter().next().unwrap();
        buckets[cursor].remove(&v);
        removed[v] = true;
        k = k.max(deg[v]);
        order.push(v);
        for &w in g.neighbors(v) {
            if !removed[w] {
                buckets[deg[w]].remove(&w);
                deg[w] -= 1;
                buckets[deg[w]].insert(w);
            }
        }
    }
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    DegeneracyOrdering {
        order,
        degeneracy: k,
        position,
    }
}

/// Independent set of size at least `n/(k+1)` by greedy coloring along the
/// reverse degeneracy order and keeping the largest color class.
pub fn greedy_independent_set(g: &Graph, ord: &DegeneracyOrdering) -> VertexSet {
    greedy_independent_in(g, ord, None)
}

/// Restriction variant: colors only `subset` and guarantees a class of size
/// at least `|subset|/(k+1)`.
pub fn greedy_independent_in(
    g: &Graph,
    ord: &DegeneracyOrdering,
    subset: Option<&VertexSet>,
) -> VertexSet {
    let n = g.n();
    let mut color = vec![usize::MAX; n];
    let in_scope = |v: usize| subset.is_none_or(|s| s.contains(&v));
    for &v in ord.order.iter().rev() {
        if !in_scope(v) {
            continue;
        }
        let mut used: BTreeSet<usize> = BTreeSet::new();
        for &w in g.neighbors(v) {
            if color[w] != usize::MAX {
                used.insert(color[w]);
            }
        }
        let mut c = 0;
        while used.contains(&c) {
            c += 1;
        }
        color[v] = c;
    }
    let mut classes: BTreeMap<usize, VertexSet> = BTreeMap::new();
    for v in 0..n {
        if color[v] != usize::MAX {
            classes.entry(color[v]).or_default().insert(v);
        }
    }
    classes
        .into_iter()
        .max_by(|(ca, a), (cb, b)| a.len().cmp(&b.len()).then(cb.cmp(ca)))
        .map(|(_, s)| s)
        .unwrap_or_default()
}

/// Induced subgraph on `s`, with maps between original and local ids.
#[derive(Debug, Clone)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// Local id -> original id (sorted ascending).
    pub to_original: Vec<usize>,
    /// Original id -> local id.
    pub to_local: BTreeMap<usize, usize>,
}

pub fn induced_subgraph(g: &Graph, s: &VertexSet) -> Result<InducedSubgraph> {
    if let Some(&v) = s.iter().find(|&&v| v >= g.n()) {
        return Err(Error::InvalidInput(format!(
            "vertex out of range: {v} >= {}",
            g.n()
        )));
    }
    let to_original: Vec<usize> = s.iter().copied().collect();
    let to_local: BTreeMap<usize, usize> = to_original
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let mut edges = Vec::new();
    for (i, &v) in to_original.iter().enumerate() {
        for &w in g.neighbors(v) {
            if let Some(&j) = to_local.get(&w) {
                if i < j {
                    edges.push((i, j));
                }
            }
        }
    }
    Ok(InducedSubgraph {
        graph: Graph::from_edges(to_original.len(), &edges)?,
        to_original,
        to_local,
    })
}

/// Moore bound and the rough `d^{g/2}` reference figure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MooreBound {
    /// Sound lower bound on the order of a graph with min degree `d` and
    /// girth at least `g`.
    pub floor: u128,
    /// `ceil(d^{g/2})`, reported for reference only; it overshoots at small
    /// parameters (the Petersen graph beats it).
    pub advisory: u128,
}

/// Minimum order of a graph with minimum degree `d` and girth `g`.
/// Odd `g = 2r+1`: `1 + d * sum_{i<r} (d-1)^i`. Even `g = 2r`:
/// `2 * sum_{i<r} (d-1)^i`.
pub fn moore_floor(d: usize, g: usize) -> Result<MooreBound> {
    if d < 3 || g < 3 {
        return Err(Error::InvalidInput(format!(
            "moore bound needs d >= 3 and g >= 3, got d={d} g={g}"
        )));
    }
    let dm1 = (d - 1) as u128;
    let geom = |terms: usize| -> u128 {
        let mut acc: u128 = 0;
        let mut pow: u128 = 1;
        for _ in 0..terms {
            acc = acc.saturating_add(pow);
            pow = pow.saturating_mul(dm1);
        }
        acc
    };
    let floor = if g % 2 == 1 {
        1 + (d as u128).saturating_mul(geom((g - 1) / 2))
    } else {
        2u128.saturating_mul(geom(g / 2))
    };
    let advisory = (d as f64).powf(g as f64 / 2.0).ceil() as u128;
    Ok(MooreBound { floor, advisory })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_named;

    fn petersen() -> Graph {
        gen_named("petersen").unwrap()
    }

    #[test]
    fn load_path_on_three() {
        let g = load_graph("nodes 3\n0 1\n1 2").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 2);
    }

    #[test]
    fn load_collapses_duplicates() {
        let g = load_graph("0 1\n0 1\n1 0").unwrap();
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn load_petersen_counts() {
        let g = petersen();
        assert_eq!(g.n(), 10);
        assert_eq!(g.m(), 15);
        assert!(g.vertices().all(|v| g.degree(v) == 3));
    }

    #[test]
    fn load_rejects_self_loop() {
        assert!(matches!(
            load_graph("0 0"),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn load_rejects_malformed() {
        assert!(matches!(load_graph("0 x"), Err(Error::Parse { .. })));
        assert!(matches!(load_graph("0"), Err(Error::Parse { .. })));
    }

    #[test]
    fn handshake_and_symmetry() {
        let g = petersen();
        let total: usize = g.vertices().map(|v| g.degree(v)).sum();
        assert_eq!(total, 2 * g.m());
        for u in g.vertices() {
            for &v in g.neighbors(u) {
                assert!(g.has_edge(v, u));
            }
        }
    }

    #[test]
    fn girth_triangle_in_k4() {
        let g = gen_named("k4").unwrap();
        assert_eq!(girth(&g), Some(3));
    }

    #[test]
    fn girth_of_tree_is_infinite() {
        let g = load_graph("0 1\n1 2\n1 3\n3 4").unwrap();
        assert_eq!(girth(&g), None);
    }

    #[test]
    fn girth_of_petersen() {
        assert_eq!(girth(&petersen()), Some(5));
    }

    #[test]
    fn ball_radius_zero_is_center() {
        let g = petersen();
        assert_eq!(ball(&g, 3, 0).unwrap(), VertexSet::from([3]));
    }

    #[test]
    fn ball_on_c6() {
        let g = gen_named("cycle:6").unwrap();
        assert_eq!(ball(&g, 0, 2).unwrap().len(), 5);
    }

    #[test]
    fn ball_on_petersen_radius_one() {
        assert_eq!(ball(&petersen(), 0, 1).unwrap().len(), 4);
    }

    #[test]
    fn ball_monotone_and_bounded() {
        let g = petersen();
        let delta = g.max_degree();
        for r in 0..4 {
            let inner = ball(&g, 0, r).unwrap();
            let outer = ball(&g, 0, r + 1).unwrap();
            assert!(inner.is_subset(&outer));
            let mut cap = 1u128;
            let mut layer = 1u128;
            for i in 0..r {
                layer *= if i == 0 { delta as u128 } else { (delta - 1) as u128 };
                cap += layer;
            }
            assert!(inner.len() as u128 <= cap);
        }
    }

    #[test]
    fn distance_rejects_unknown_vertex() {
        let g = petersen();
        assert!(distance(&g, 0, 99).is_err());
    }

    #[test]
    fn degeneracy_of_tree_is_one() {
        let g = load_graph("0 1\n1 2\n1 3\n3 4").unwrap();
        assert_eq!(degeneracy_ordering(&g).degeneracy, 1);
    }

    #[test]
    fn degeneracy_of_k5() {
        let g = gen_named("k5").unwrap();
        assert_eq!(degeneracy_ordering(&g).degeneracy, 4);
    }

    #[test]
    fn degeneracy_of_petersen_with_right_degree_bound() {
        let g = petersen();
        let ord = degeneracy_ordering(&g);
        assert_eq!(ord.degeneracy, 3);
        for v in g.vertices() {
            assert!(ord.right_degree(&g, v) <= ord.degeneracy);
        }
    }

    #[test]
    fn random_orderings_never_beat_peeling() {
        let g = petersen();
        let ord = degeneracy_ordering(&g);
        let mut stream = crate::RandomSource::new(99).stream("perm", 0);
        let mut perm: Vec<usize> = g.vertices().collect();
        for _ in 0..10_000 {
            stream.shuffle(&mut perm);
            let mut pos = vec![0; g.n()];
            for (i, &v) in perm.iter().enumerate() {
                pos[v] = i;
            }
            let max_right = g
                .vertices()
                .map(|v| {
                    g.neighbors(v)
                        .iter()
                        .filter(|&&w| pos[w] > pos[v])
                        .count()
                })
                .max()
                .unwrap();
            assert!(max_right >= ord.degeneracy);
        }
    }

    #[test]
    fn greedy_independent_set_is_independent_and_large() {
        for name in ["petersen", "cycle:5", "k4", "heawood"] {
            let g = gen_named(name).unwrap();
            let ord = degeneracy_ordering(&g);
            let set = greedy_independent_set(&g, &ord);
            for &u in &set {
                for &v in &set {
                    assert!(u == v || !g.has_edge(u, v));
                }
            }
            assert!(set.len() * (ord.degeneracy + 1) >= g.n());
        }
    }

    #[test]
    fn greedy_independent_on_k4_is_single_vertex() {
        let g = gen_named("k4").unwrap();
        let ord = degeneracy_ordering(&g);
        assert_eq!(greedy_independent_set(&g, &ord).len(), 1);
    }

    #[test]
    fn induced_identity() {
        let g = petersen();
        let all: VertexSet = g.vertices().collect();
        let sub = induced_subgraph(&g, &all).unwrap();
        assert_eq!(sub.graph, g);
    }

    #[test]
    fn induced_triangle_from_k4() {
        let g = gen_named("k4").unwrap();
        let sub = induced_subgraph(&g, &VertexSet::from([0, 1, 3])).unwrap();
        assert_eq!(sub.graph.n(), 3);
        assert_eq!(sub.graph.m(), 3);
    }

    #[test]
    fn induced_outer_cycle_of_petersen() {
        let g = petersen();
        let sub = induced_subgraph(&g, &VertexSet::from([0, 1, 2, 3, 4])).unwrap();
        assert_eq!(sub.graph.m(), 5);
        assert_eq!(girth(&sub.graph), Some(5));
    }

    #[test]
    fn moore_values() {
        assert_eq!(moore_floor(3, 5).unwrap().floor, 10);
        assert_eq!(moore_floor(3, 3).unwrap().floor, 4);
        assert_eq!(moore_floor(3, 5).unwrap().advisory, 16);
        assert_eq!(moore_floor(3, 6).unwrap().floor, 14);
        assert!(moore_floor(2, 5).is_err());
    }

    #[test]
    fn moore_floor_respected_by_corpus() {
        for name in ["petersen", "heawood", "mcgee", "k4", "k5"] {
            let g = gen_named(name).unwrap();
            let d = g.min_degree();
            if d < 3 {
                continue;
            }
            if let Some(girth) = girth(&g) {
                let bound = moore_floor(d, girth).unwrap();
                assert!(bound.floor <= g.n() as u128, "{name}");
            }
        }
    }

    #[test]
    fn edge_list_round_trip() {
        let g = petersen();
        let text = g.to_edge_list();
        assert_eq!(load_graph(&text).unwrap(), g);
    }
}
