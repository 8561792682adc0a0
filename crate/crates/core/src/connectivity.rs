//! Vertex connectivity via unit-capacity flows on the split digraph,
//! boundaries, the bounded-boundary k-connected extraction, degree peeling
//! and cores, the connected-good procedure, and vertex-disjoint path
//! linkage with rip-up-and-reroute.

use std::collections::{BTreeMap, VecDeque};

use crate::error::Error;
use crate::graph::{girth, induced_subgraph, Graph, VertexSet};
use crate::profile::ConstantsProfile;
use crate::Result;

/// Max number of vertex-disjoint `s`-`t` paths, capped at `cap`.
/// When the flow value is below `cap`, also returns a minimum vertex cut.
fn vertex_flow(g: &Graph, s: usize, t: usize, cap: usize) -> (usize, Option<Vec<usize>>) {
    // Split digraph: node 2v = in(v), 2v+1 = out(v). Adjacency arcs get
    // effectively infinite capacity so every minimum cut consists of
    // vertex-split arcs only.
    let n = g.n();
    let size = 2 * n;
    let big = (n as u32) + 1;
    let mut to: Vec<usize> = Vec::new();
    let mut capacity: Vec<u32> = Vec::new();
    let mut head: Vec<Vec<usize>> = vec![Vec::new(); size];
    let push = |from: usize, dest: usize, c: u32, to: &mut Vec<usize>, capacity: &mut Vec<u32>, head: &mut Vec<Vec<usize>>| {
        head[from].push(to.len());
        to.push(dest);
        capacity.push(c);
        head[dest].push(to.len());
        to.push(from);
        capacity.push(0);
    };
    for v in 0..n {
        let c = if v == s || v == t { big } else { 1 };
        push(2 * v, 2 * v + 1, c, &mut to, &mut capacity, &mut head);
    }
    for u in 0..n {
        for &v in g.neighbors(u) {
            push(2 * u + 1, 2 * v, big, &mut to, &mut capacity, &mut head);
        }
    }
    let src = 2 * s + 1;
    let dst = 2 * t;
    let mut flow = 0usize;
    let mut parent_edge = vec![usize::MAX; size];
    while flow < cap {
        for p in parent_edge.iter_mut() {
            *p = usize::MAX;
        }
        let mut queue = VecDeque::from([src]);
        parent_edge[src] = usize::MAX - 1;
        let mut reached = false;
        'bfs: while let Some(u) = queue.pop_front() {
            for &e in &head[u] {
                if capacity[e] > 0 && parent_edge[to[e]] == usize::MAX && to[e] != src {
                    parent_edge[to[e]] = e;
                    if to[e] == dst {
                        reached = true;
                        break 'bfs;
                    }
                    queue.push_back(to[e]);
                }
            }
        }
        if !reached {
            // Min cut: vertices whose in-node is reachable but out-node is
            // not, in the residual network.
            let mut seen = vec![false; size];
            seen[src] = true;
            let mut queue = VecDeque::from([src]);
            while let Some(u) = queue.pop_front() {
                for &e in &head[u] {
                    if capacity[e] > 0 && !seen[to[e]] {
                        seen[to[e]] = true;
                        queue.push_back(to[e]);
                    }
                }
            }
            let cut: Vec<usize> = (0..n)
                .filter(|&v| v != s && v != t && seen[2 * v] && !seen[2 * v + 1])
                .collect();
            debug_assert_eq!(cut.len(), flow);
            return (flow, Some(cut));
        }
        let mut e = parent_edge[dst];
        while e != usize::MAX - 1 {
            capacity[e] -= 1;
            capacity[e ^ 1] += 1;
            let from = to[e ^ 1];
            if from == src {
                break;
            }
            e = parent_edge[from];
        }
        flow += 1;
    }
    (flow, None)
}

/// Vertex connectivity capped at `cap`; when below the cap also returns a
/// witnessing minimum vertex cut. Uses the min-degree pivot: the minimum
/// over flows from a min-degree vertex to its non-neighbors and between
/// non-adjacent pairs of its neighbors equals the connectivity.
fn connectivity_capped(g: &Graph, cap: usize) -> (usize, Option<Vec<usize>>) {
    let n = g.n();
    if n == 0 {
        return (0, Some(Vec::new()));
    }
    if g.is_complete() {
        return ((n - 1).min(cap), None);
    }
    let pivot = (0..n).min_by_key(|&v| (g.degree(v), v)).unwrap();
    let mut best = cap.min(g.degree(pivot) + 1).min(n);
    let mut best_cut: Option<Vec<usize>> = None;
    let consider = |s: usize, t: usize, best: &mut usize, best_cut: &mut Option<Vec<usize>>| {
        if *best == 0 {
            return;
        }
        let (f, cut) = vertex_flow(g, s, t, *best);
        if f < *best {
            *best = f;
            *best_cut = cut;
        }
    };
    for u in 0..n {
        if u != pivot && !g.has_edge(pivot, u) {
            consider(pivot, u, &mut best, &mut best_cut);
        }
    }
    let nbrs: Vec<usize> = g.neighbors(pivot).to_vec();
    for (i, &x) in nbrs.iter().enumerate() {
        for &y in &nbrs[i + 1..] {
            if !g.has_edge(x, y) {
                consider(x, y, &mut best, &mut best_cut);
            }
        }
    }
    if best >= cap {
        (cap, None)
    } else {
        (best, best_cut)
    }
}

/// Vertex connectivity; `n - 1` for complete graphs, 0 for disconnected or
/// empty graphs.
pub fn vertex_connectivity(g: &Graph) -> usize {
    if g.n() == 0 {
        return 0;
    }
    connectivity_capped(g, g.n()).0
}

/// Whether the graph is `k`-connected. Graphs on fewer than 3 vertices are
/// rejected; callers that accept the small-graph convention use
/// [`is_k_connected_allow_small`].
pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    g.n() >= 3 && connectivity_capped(g, k).0 >= k
}

/// Small-graph variant: graphs on at most 2 vertices count as trivially
/// k-connected.
pub fn is_k_connected_allow_small(g: &Graph, k: usize) -> bool {
    g.n() <= 2 || connectivity_capped(g, k).0 >= k
}

/// Vertices of `x` with at least one neighbor outside `x`.
pub fn boundary_of(g: &Graph, x: &VertexSet) -> VertexSet {
    x.iter()
        .copied()
        .filter(|&v| g.neighbors(v).iter().any(|w| !x.contains(w)))
        .collect()
}

/// Core of the search shared by [`bounded_boundary_subgraph`] and the
/// connected-good extraction: recursive separator splitting. While the
/// candidate is not k-connected, remove a minimum cut, keep the largest
/// remaining component together with the cut, and charge the growing
/// boundary against `boundary_cap`.
fn bounded_boundary_search(
    g: &Graph,
    k: usize,
    size_floor: usize,
    boundary_cap: usize,
) -> Result<(VertexSet, VertexSet)> {
    let mut candidate: VertexSet = g.vertices().collect();
    let mut best: Option<(usize, usize)> = None;
    loop {
        if candidate.len() < 3 || candidate.len() <= size_floor {
            return Err(Error::NotFound(format!(
                "candidate shrank to {} vertices (needed > {size_floor}); best k-connected size seen: {:?}",
                candidate.len(),
                best
            )));
        }
        let bd = boundary_of(g, &candidate);
        if bd.len() > boundary_cap {
            return Err(Error::NotFound(format!(
                "boundary budget exceeded: {} > {boundary_cap}",
                bd.len()
            )));
        }
        let sub = induced_subgraph(g, &candidate)?;
        let (kappa, cut) = connectivity_capped(&sub.graph, k);
        if kappa >= k {
            if candidate.len() > size_floor {
                return Ok((candidate, bd));
            }
            return Err(Error::NotFound(format!(
                "k-connected candidate too small: {} <= {size_floor}",
                candidate.len()
            )));
        }
        best = Some((kappa, candidate.len()));
        let cut: VertexSet = cut
            .unwrap_or_default()
            .into_iter()
            .map(|v| sub.to_original[v])
            .collect();
        // Components of the candidate minus the cut; keep the largest
        // (ties to the one holding the smallest id) plus the cut.
        let remaining: VertexSet = candidate.difference(&cut).copied().collect();
        let comps = components_within(g, &remaining);
        let Some(largest) = comps
            .into_iter()
            .max_by(|a, b| a.len().cmp(&b.len()).then_with(|| b.cmp(a)))
        else {
            return Err(Error::NotFound("candidate dissolved entirely".into()));
        };
        let mut next: VertexSet = largest;
        next.extend(cut.iter().copied());
        if next.len() >= candidate.len() {
            return Err(Error::NotFound(
                "separator split made no progress".into(),
            ));
        }
        candidate = next;
    }
}

fn components_within(g: &Graph, scope: &VertexSet) -> Vec<VertexSet> {
    let mut seen = VertexSet::new();
    let mut out = Vec::new();
    for &start in scope {
        if seen.contains(&start) {
            continue;
        }
        let mut comp = VertexSet::new();
        let mut queue = VecDeque::from([start]);
        seen.insert(start);
        comp.insert(start);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if scope.contains(&w) && seen.insert(w) {
                    comp.insert(w);
                    queue.push_back(w);
                }
            }
        }
        out.push(comp);
    }
    out
}

/// A k-connected induced subgraph on more than `4k^2` vertices whose
/// boundary has at most `2k^2` vertices, given minimum degree `4k^2`.
/// Both the returned set and boundary are re-verified before return.
pub fn bounded_boundary_subgraph(g: &Graph, k: usize) -> Result<(VertexSet, VertexSet)> {
    if k < 1 {
        return Err(Error::InvalidInput("need k >= 1".into()));
    }
    if g.min_degree() < 4 * k * k {
        return Err(Error::HypothesisNotMet(format!(
            "minimum degree {} below 4k^2 = {}",
            g.min_degree(),
            4 * k * k
        )));
    }
    let (set, bd) = bounded_boundary_search(g, k, 4 * k * k, 2 * k * k)?;
    let sub = induced_subgraph(g, &set)?;
    if !is_k_connected(&sub.graph, k) || set.len() <= 4 * k * k || bd.len() > 2 * k * k {
        return Err(Error::StructureViolation(
            "bounded-boundary postcondition re-check failed".into(),
        ));
    }
    Ok((set, bd))
}

/// Maximal induced subgraph with minimum degree at least `threshold` (the
/// standard core) plus the deletion order, lowest id first among the
/// currently sub-threshold vertices.
pub fn peel_to_min_degree(g: &Graph, threshold: usize) -> (VertexSet, Vec<usize>) {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut pending: VertexSet = (0..n).filter(|&v| deg[v] < threshold).collect();
    let mut order = Vec::new();
    while let Some(&v) = pending.iter().next() {
        pending.remove(&v);
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        order.push(v);
        for &w in g.neighbors(v) {
            if alive[w] {
                deg[w] -= 1;
                if deg[w] < threshold {
                    pending.insert(w);
                }
            }
        }
    }
    let core: VertexSet = (0..n).filter(|&v| alive[v]).collect();
    (core, order)
}

/// The core with the maximum achievable minimum degree, i.e. the
/// degeneracy-achieving subgraph.
pub fn max_core(g: &Graph) -> VertexSet {
    let k = crate::graph::degeneracy_ordering(g).degeneracy;
    peel_to_min_degree(g, k).0
}

/// One extraction round of the connected-good process.
#[derive(Debug, Clone)]
pub struct PeelRound {
    /// The k-connected subgraph extracted this round.
    pub h: VertexSet,
    /// Its boundary in the round's current graph.
    pub s: VertexSet,
    /// Vertices peeled for low degree after the extraction, in deletion
    /// order.
    pub d: Vec<usize>,
}

/// Ordered record of the extraction/peeling process.
#[derive(Debug, Clone, Default)]
pub struct PeelTrace {
    pub rounds: Vec<PeelRound>,
    pub leftover: VertexSet,
}

impl PeelTrace {
    /// Line-oriented log: `round t | H: ... | S: ... | D: ...`.
    pub fn to_log(&self) -> String {
        let fmt = |s: &mut String, ids: &mut dyn Iterator<Item = usize>| {
            for v in ids {
                s.push(' ');
                s.push_str(&v.to_string());
            }
        };
        let mut out = String::new();
        for (t, round) in self.rounds.iter().enumerate() {
            out.push_str(&format!("round {} | H:", t + 1));
            fmt(&mut out, &mut round.h.iter().copied());
            out.push_str(" | S:");
            fmt(&mut out, &mut round.s.iter().copied());
            out.push_str(" | D:");
            fmt(&mut out, &mut round.d.iter().copied());
            out.push('\n');
        }
        out.push_str("leftover:");
        fmt(&mut out, &mut self.leftover.iter().copied());
        out.push('\n');
        out
    }

    /// The cumulative-deletion inequality |D^i| <= Delta * |S^i| at every
    /// prefix, vacuous only while nothing has been peeled.
    pub fn deletion_inequality_holds(&self, max_degree: usize) -> bool {
        let mut d_total = 0usize;
        let mut s_total = 0usize;
        for round in &self.rounds {
            d_total += round.d.len();
            s_total += round.s.len();
            if d_total > max_degree * s_total {
                return false;
            }
        }
        true
    }
}

#[derive(Debug, Clone)]
pub struct ConnectedGood {
    /// Vertex set of the extracted highly connected subgraph.
    pub h_prime: VertexSet,
    /// Tracked vertices inside it that kept their full original degree.
    pub preserved: VertexSet,
    pub trace: PeelTrace,
}

/// Iterated bounded-boundary extraction: pull out a k-connected subgraph,
/// stop when one carries enough tracked vertices with fully preserved
/// degree, otherwise delete it, peel low-degree vertices and repeat.
pub fn connected_good(
    g: &Graph,
    b: &VertexSet,
    d: usize,
    profile: &ConstantsProfile,
) -> Result<ConnectedGood> {
    let n = g.n();
    if g.min_degree() < profile.cg_delta_floor(d) {
        return Err(Error::HypothesisNotMet(format!(
            "minimum degree {} below {}",
            g.min_degree(),
            profile.cg_delta_floor(d)
        )));
    }
    if g.max_degree() > profile.cg_maxdeg_cap(d) {
        return Err(Error::HypothesisNotMet(format!(
            "maximum degree {} above {}",
            g.max_degree(),
            profile.cg_maxdeg_cap(d)
        )));
    }
    if let Some(girth) = girth(g) {
        if girth < profile.cg_girth_floor {
            return Err(Error::HypothesisNotMet(format!(
                "girth {girth} below {}",
                profile.cg_girth_floor
            )));
        }
    }
    if (b.len() as f64) < profile.cg_bsize_floor(n, d) {
        return Err(Error::HypothesisNotMet(format!(
            "tracked set size {} below {}",
            b.len(),
            profile.cg_bsize_floor(n, d)
        )));
    }
    let k = profile.cg_connectivity(d);
    let peel_threshold = profile.cg_peel_threshold(d);
    let boundary_cap = profile.cg_boundary_cap(d);
    let mut current: VertexSet = g.vertices().collect();
    let mut trace = PeelTrace::default();
    while current.len() >= 3 {
        let sub = induced_subgraph(g, &current)?;
        let (local_h, _) = bounded_boundary_search(&sub.graph, k, 2.max(k), boundary_cap)
            .inspect_err(|_| {
                trace.leftover = current.clone();
            })?;
        let h_t: VertexSet = local_h.iter().map(|&v| sub.to_original[v]).collect();
        let s_t: VertexSet = {
            // Boundary within the current graph, not the original.
            h_t.iter()
                .copied()
                .filter(|&v| {
                    g.neighbors(v)
                        .iter()
                        .any(|w| current.contains(w) && !h_t.contains(w))
                })
                .collect()
        };
        let preserved: VertexSet = b
            .iter()
            .copied()
            .filter(|&x| {
                h_t.contains(&x)
                    && g.neighbors(x).iter().all(|w| h_t.contains(w))
            })
            .collect();
        let floor = profile.cg_preserved_floor(h_t.len(), d);
        if preserved.len() >= floor {
            trace.rounds.push(PeelRound {
                h: h_t.clone(),
                s: s_t,
                d: Vec::new(),
            });
            trace.leftover = current.difference(&h_t).copied().collect();
            // Re-verify the contract before returning.
            let hsub = induced_subgraph(g, &h_t)?;
            if !is_k_connected(&hsub.graph, k) {
                return Err(Error::StructureViolation(
                    "extracted subgraph failed the connectivity re-check".into(),
                ));
            }
            return Ok(ConnectedGood {
                h_prime: h_t,
                preserved,
                trace,
            });
        }
        // Delete the subgraph and peel.
        let after: VertexSet = current.difference(&h_t).copied().collect();
        let subsub = induced_subgraph(g, &after)?;
        let (core_local, order_local) = peel_to_min_degree(&subsub.graph, peel_threshold);
        let d_t: Vec<usize> = order_local.iter().map(|&v| subsub.to_original[v]).collect();
        current = core_local.iter().map(|&v| subsub.to_original[v]).collect();
        trace.rounds.push(PeelRound {
            h: h_t,
            s: s_t,
            d: d_t,
        });
    }
    trace.leftover = current;
    Err(Error::NotFound(format!(
        "process exhausted after {} rounds without a qualifying subgraph",
        trace.rounds.len()
    )))
}

/// Vertex-disjoint paths, one per terminal pair.
#[derive(Debug, Clone)]
pub struct Linkage {
    pub pairs: Vec<(usize, usize)>,
    pub paths: Vec<Vec<usize>>,
}

impl Linkage {
    pub fn verify(&self, g: &Graph, forbidden: &VertexSet) -> bool {
        if self.paths.len() != self.pairs.len() {
            return false;
        }
        let mut used = VertexSet::new();
        for (path, &(a, b)) in self.paths.iter().zip(&self.pairs) {
            if path.first() != Some(&a) || path.last() != Some(&b) {
                return false;
            }
            for w in path.windows(2) {
                if !g.has_edge(w[0], w[1]) {
                    return false;
                }
            }
            for &v in path {
                if forbidden.contains(&v) || !used.insert(v) {
                    return false;
                }
            }
        }
        true
    }
}

const LINK_EXHAUSTIVE_BUDGET: usize = 2_000_000;

/// Vertex-disjoint paths joining the given pairs while avoiding
/// `forbidden`: iterative shortest-path routing over rotated pair orders,
/// then a budgeted exhaustive search as a fallback.
pub fn link_pairs(
    g: &Graph,
    pairs: &[(usize, usize)],
    forbidden: &VertexSet,
) -> Result<Linkage> {
    let mut endpoints = VertexSet::new();
    for &(a, b) in pairs {
        for v in [a, b] {
            if v >= g.n() {
                return Err(Error::InvalidInput(format!("vertex {v} out of range")));
            }
            if forbidden.contains(&v) {
                return Err(Error::InvalidInput(format!(
                    "endpoint {v} is forbidden"
                )));
            }
            if !endpoints.insert(v) {
                return Err(Error::InvalidInput(format!(
                    "endpoint {v} used by two pairs"
                )));
            }
        }
    }
    let k = pairs.len();
    if k == 0 {
        return Ok(Linkage {
            pairs: Vec::new(),
            paths: Vec::new(),
        });
    }
    // Rotation rip-up: when an order fails, restart with the pair list
    // rotated so a different pair claims its shortest route first.
    for round in 0..2 * k {
        let mut order: Vec<usize> = (0..k).map(|i| (i + round) % k).collect();
        if round >= k {
            order.reverse();
        }
        if let Some(paths) = route_in_order(g, pairs, forbidden, &endpoints, &order) {
            let linkage = Linkage {
                pairs: pairs.to_vec(),
                paths,
            };
            if linkage.verify(g, forbidden) {
                return Ok(linkage);
            }
            return Err(Error::StructureViolation(
                "router produced an invalid linkage".into(),
            ));
        }
    }
    // Exhaustive fallback.
    let mut nodes = 0usize;
    let mut chosen: Vec<Vec<usize>> = Vec::new();
    let mut used: VertexSet = forbidden.clone();
    if exhaustive_link(g, pairs, forbidden, &endpoints, 0, &mut chosen, &mut used, &mut nodes)? {
        let linkage = Linkage {
            pairs: pairs.to_vec(),
            paths: chosen,
        };
        if linkage.verify(g, forbidden) {
            return Ok(linkage);
        }
        return Err(Error::StructureViolation(
            "exhaustive router produced an invalid linkage".into(),
        ));
    }
    Err(Error::NotFound(format!(
        "no disjoint routing for {k} pairs"
    )))
}

fn route_in_order(
    g: &Graph,
    pairs: &[(usize, usize)],
    forbidden: &VertexSet,
    endpoints: &VertexSet,
    order: &[usize],
) -> Option<Vec<Vec<usize>>> {
    let mut paths: Vec<Option<Vec<usize>>> = vec![None; pairs.len()];
    let mut used: VertexSet = forbidden.clone();
    used.extend(endpoints.iter().copied());
    for &idx in order {
        let (a, b) = pairs[idx];
        let path = lexicographic_shortest_avoiding(g, a, b, &used)?;
        for &v in &path[1..path.len() - 1] {
            used.insert(v);
        }
        paths[idx] = Some(path);
    }
    Some(paths.into_iter().map(|p| p.unwrap()).collect())
}

/// Shortest a-b path whose interior avoids `blocked`; lexicographically
/// smallest among shortest. Endpoints may appear in `blocked`.
fn lexicographic_shortest_avoiding(
    g: &Graph,
    a: usize,
    b: usize,
    blocked: &VertexSet,
) -> Option<Vec<usize>> {
    let ok = |v: usize| v == a || v == b || !blocked.contains(&v);
    let mut dist: BTreeMap<usize, usize> = BTreeMap::new();
    dist.insert(b, 0);
    let mut queue = VecDeque::from([b]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if ok(w) && !dist.contains_key(&w) {
                dist.insert(w, dist[&u] + 1);
                queue.push_back(w);
            }
        }
    }
    let total = *dist.get(&a)?;
    let mut path = vec![a];
    let mut cur = a;
    for step in (0..total).rev() {
        let next = g
            .neighbors(cur)
            .iter()
            .copied()
            .find(|&w| ok(w) && dist.get(&w) == Some(&step))?;
        path.push(next);
        cur = next;
    }
    Some(path)
}

#[allow(clippy::too_many_arguments)]
fn exhaustive_link(
    g: &Graph,
    pairs: &[(usize, usize)],
    forbidden: &VertexSet,
    endpoints: &VertexSet,
    k: usize,
    chosen: &mut Vec<Vec<usize>>,
    used: &mut VertexSet,
    nodes: &mut usize,
) -> Result<bool> {
    if k == pairs.len() {
        return Ok(true);
    }
    let (a, b) = pairs[k];
    let mut path = vec![a];
    let mut blocked: VertexSet = used.clone();
    blocked.extend(endpoints.iter().copied());
    for p in chosen.iter() {
        blocked.extend(p.iter().copied());
    }
    dfs_link(
        g, pairs, forbidden, endpoints, k, chosen, used, &mut path, b, &blocked, nodes,
    )
}

#[allow(clippy::too_many_arguments)]
fn dfs_link(
    g: &Graph,
    pairs: &[(usize, usize)],
    forbidden: &VertexSet,
    endpoints: &VertexSet,
    k: usize,
    chosen: &mut Vec<Vec<usize>>,
    used: &mut VertexSet,
    path: &mut Vec<usize>,
    target: usize,
    blocked: &VertexSet,
    nodes: &mut usize,
) -> Result<bool> {
    *nodes += 1;
    if *nodes > LINK_EXHAUSTIVE_BUDGET {
        return Err(Error::BudgetExhausted(format!(
            "link search truncated after {LINK_EXHAUSTIVE_BUDGET} nodes"
        )));
    }
    let cur = *path.last().unwrap();
    for &next in g.neighbors(cur) {
        if next == target {
            chosen.push({
                let mut p = path.clone();
                p.push(target);
                p
            });
            if exhaustive_link(g, pairs, forbidden, endpoints, k + 1, chosen, used, nodes)? {
                return Ok(true);
            }
            chosen.pop();
            continue;
        }
        if blocked.contains(&next) || path.contains(&next) {
            continue;
        }
        path.push(next);
        if dfs_link(
            g, pairs, forbidden, endpoints, k, chosen, used, path, target, blocked, nodes,
        )? {
            return Ok(true);
        }
        path.pop();
    }
    Ok(false)
}
