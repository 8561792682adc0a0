//! The ball/path structure: a separated center set whose balls partition
//! the host into trees, an auxiliary graph with one short induced path per
//! center pair, the incidence map that records which balls a path touches,
//! random sparsification keeping only cleanly separated edges, branchable
//! vertices, and the final assembly of an induced subdivision from d+1
//! branchable vertices.

use std::collections::{BTreeMap, BinaryHeap, VecDeque};

use crate::certify::{induced_path_reduce, verify_induced_subdivision, SubdivisionCertificate};
use crate::connectivity::{is_k_connected, link_pairs};
use crate::error::Error;
use crate::graph::{girth, induced_subgraph, Graph, VertexSet};
use crate::pipeline::report::PipelineReport;
use crate::probabilistic::bernoulli_subset;
use crate::profile::ConstantsProfile;
use crate::rng::{RandomSource, Stream};
use crate::Result;

/// Partition of the host into center balls, each inducing a tree.
#[derive(Debug, Clone)]
pub struct BallDecomposition {
    /// All centers (sorted): the separated subset of the tracked set plus
    /// the greedy completion.
    pub centers: Vec<usize>,
    /// Centers drawn from the tracked set.
    pub u_centers: VertexSet,
    /// Completion centers.
    pub w_centers: VertexSet,
    /// Center owning each vertex.
    pub ball_of: Vec<usize>,
    /// BFS parent within the ball; centers point to themselves.
    pub tree_parent: Vec<usize>,
}

impl BallDecomposition {
    pub fn ball_members(&self, center: usize) -> VertexSet {
        self.ball_of
            .iter()
            .enumerate()
            .filter_map(|(v, &c)| (c == center).then_some(v))
            .collect()
    }
}

/// Greedy separated centers from `u`, completion from everything else,
/// then nearest-center BFS assignment (ties to the lower center id).
pub fn ball_decomposition(
    g: &Graph,
    u: &VertexSet,
    profile: &ConstantsProfile,
) -> Result<BallDecomposition> {
    let n = g.n();
    let sep = profile.separation;
    if let Some(girth) = girth(g) {
        if girth <= 2 * profile.ball_radius_outer + 1 {
            return Err(Error::HypothesisNotMet(format!(
                "girth {girth} too small for tree balls (needs > {})",
                2 * profile.ball_radius_outer + 1
            )));
        }
    }
    if u.is_empty() {
        return Err(Error::HypothesisNotMet("tracked set is empty".into()));
    }
    if let Some(&v) = u.iter().next_back() {
        if v >= n {
            return Err(Error::InvalidInput(format!("vertex {v} out of range")));
        }
    }
    // blocked[v] = some already chosen center is within distance sep.
    let mut blocked = vec![false; n];
    let mut u_centers = VertexSet::new();
    let mut w_centers = VertexSet::new();
    let block_around = |center: usize, blocked: &mut Vec<bool>| {
        let mut dist = vec![usize::MAX; n];
        dist[center] = 0;
        blocked[center] = true;
        let mut queue = VecDeque::from([center]);
        while let Some(x) = queue.pop_front() {
            if dist[x] == sep {
                continue;
            }
            for &w in g.neighbors(x) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[x] + 1;
                    blocked[w] = true;
                    queue.push_back(w);
                }
            }
        }
    };
    for &v in u {
        if !blocked[v] {
            u_centers.insert(v);
            block_around(v, &mut blocked);
        }
    }
    for v in 0..n {
        if !blocked[v] {
            w_centers.insert(v);
            block_around(v, &mut blocked);
        }
    }
    let centers: Vec<usize> = u_centers.union(&w_centers).copied().collect();

    // Nearest-center assignment with deterministic (dist, center) priority.
    let mut ball_of = vec![usize::MAX; n];
    let mut tree_parent = vec![usize::MAX; n];
    let mut heap: BinaryHeap<std::cmp::Reverse<(usize, usize, usize, usize)>> = BinaryHeap::new();
    for &c in &centers {
        heap.push(std::cmp::Reverse((0, c, c, c)));
    }
    while let Some(std::cmp::Reverse((d0, c, v, parent))) = heap.pop() {
        if ball_of[v] != usize::MAX {
            continue;
        }
        ball_of[v] = c;
        tree_parent[v] = parent;
        for &w in g.neighbors(v) {
            if ball_of[w] == usize::MAX {
                heap.push(std::cmp::Reverse((d0 + 1, c, w, v)));
            }
        }
    }
    let bd = BallDecomposition {
        centers,
        u_centers,
        w_centers,
        ball_of,
        tree_parent,
    };
    verify_decomposition(g, &bd, profile)?;
    Ok(bd)
}

fn verify_decomposition(
    g: &Graph,
    bd: &BallDecomposition,
    profile: &ConstantsProfile,
) -> Result<()> {
    let n = g.n();
    // Partition with radius bound: every vertex assigned, with its tree
    // path to the center no longer than the outer radius.
    for v in 0..n {
        if bd.ball_of[v] == usize::MAX {
            return Err(Error::StructureViolation(format!(
                "vertex {v} assigned to no ball"
            )));
        }
        let mut cur = v;
        let mut depth = 0usize;
        while cur != bd.ball_of[v] {
            cur = bd.tree_parent[cur];
            depth += 1;
            if depth > profile.ball_radius_outer {
                return Err(Error::StructureViolation(format!(
                    "vertex {v} deeper than {} in its ball",
                    profile.ball_radius_outer
                )));
            }
        }
    }
    // Pairwise separation of centers.
    for &c in &bd.centers {
        let mut dist = vec![usize::MAX; n];
        dist[c] = 0;
        let mut queue = VecDeque::from([c]);
        while let Some(x) = queue.pop_front() {
            if dist[x] == profile.separation {
                continue;
            }
            for &w in g.neighbors(x) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[x] + 1;
                    if w != c && bd.centers.binary_search(&w).is_ok() {
                        return Err(Error::StructureViolation(format!(
                            "centers {c} and {w} at distance {} <= {}",
                            dist[w], profile.separation
                        )));
                    }
                    queue.push_back(w);
                }
            }
        }
    }
    // Each ball induces a tree: edge count inside equals size - 1, and the
    // radius-core ball around each center stays within its own ball.
    let mut size: BTreeMap<usize, usize> = BTreeMap::new();
    for v in 0..n {
        *size.entry(bd.ball_of[v]).or_insert(0) += 1;
    }
    let mut inner_edges: BTreeMap<usize, usize> = BTreeMap::new();
    for (u, v) in g.edges() {
        if bd.ball_of[u] == bd.ball_of[v] {
            *inner_edges.entry(bd.ball_of[u]).or_insert(0) += 1;
        }
    }
    for &c in &bd.centers {
        let sz = size.get(&c).copied().unwrap_or(0);
        let ie = inner_edges.get(&c).copied().unwrap_or(0);
        if ie + 1 != sz {
            return Err(Error::StructureViolation(format!(
                "ball of {c} is not a tree ({sz} vertices, {ie} internal edges)"
            )));
        }
        for v in crate::graph::ball(g, c, profile.ball_radius_core)? {
            if bd.ball_of[v] != c {
                return Err(Error::StructureViolation(format!(
                    "core ball of {c} leaks into the ball of {}",
                    bd.ball_of[v]
                )));
            }
        }
    }
    Ok(())
}

/// The auxiliary graph over all centers plus per-edge host paths and
/// ball-incidence sets.
#[derive(Debug, Clone)]
pub struct StructureGraph {
    /// Local index -> host center id (sorted ascending).
    pub centers: Vec<usize>,
    pub center_idx: BTreeMap<usize, usize>,
    pub h_star: Graph,
    /// Local edge -> host path realizing it (from the smaller-index center
    /// to the larger).
    pub path_of: BTreeMap<(usize, usize), Vec<usize>>,
    /// Local edge -> local center indices whose balls touch the path
    /// (always contains both endpoints).
    pub f_adj: BTreeMap<(usize, usize), VertexSet>,
}

/// Connect center pairs joined by a path of length at most the build cap
/// inside the union of their two balls; record the lexicographically least
/// shortest such path and the centers its neighborhood touches.
pub fn build_structure(
    g: &Graph,
    bd: &BallDecomposition,
    profile: &ConstantsProfile,
) -> Result<StructureGraph> {
    let centers = bd.centers.clone();
    let center_idx: BTreeMap<usize, usize> = centers
        .iter()
        .enumerate()
        .map(|(i, &c)| (c, i))
        .collect();
    // Candidate pairs: balls joined by at least one host edge.
    let mut candidates: std::collections::BTreeSet<(usize, usize)> =
        std::collections::BTreeSet::new();
    for (u, v) in g.edges() {
        let (a, b) = (bd.ball_of[u], bd.ball_of[v]);
        if a != b {
            candidates.insert((a.min(b), a.max(b)));
        }
    }
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut path_of = BTreeMap::new();
    for &(x, y) in &candidates {
        let scope: VertexSet = (0..g.n())
            .filter(|&v| bd.ball_of[v] == x || bd.ball_of[v] == y)
            .collect();
        if let Some(path) = shortest_in_scope(g, &scope, x, y, profile.build_path_cap) {
            let (i, j) = (center_idx[&x], center_idx[&y]);
            edges.push((i.min(j), i.max(j)));
            path_of.insert((i.min(j), i.max(j)), path);
        }
    }
    let h_star = Graph::from_edges(centers.len(), &edges)?;
    // Incidence: every center whose ball is touched by an edge from the
    // path (the endpoints always qualify through their tree edges).
    let mut f_adj = BTreeMap::new();
    for (&key, path) in &path_of {
        let mut set = VertexSet::from([key.0, key.1]);
        for &p in path {
            for &w in g.neighbors(p) {
                set.insert(center_idx[&bd.ball_of[w]]);
            }
        }
        f_adj.insert(key, set);
    }
    Ok(StructureGraph {
        centers,
        center_idx,
        h_star,
        path_of,
        f_adj,
    })
}

/// Lexicographically least shortest path within `scope`, length-capped.
fn shortest_in_scope(
    g: &Graph,
    scope: &VertexSet,
    from: usize,
    to: usize,
    cap: usize,
) -> Option<Vec<usize>> {
    let mut dist: BTreeMap<usize, usize> = BTreeMap::new();
    dist.insert(to, 0);
    let mut queue = VecDeque::from([to]);
    while let Some(u) = queue.pop_front() {
        if dist[&u] == cap {
            continue;
        }
        for &w in g.neighbors(u) {
            if scope.contains(&w) && !dist.contains_key(&w) {
                dist.insert(w, dist[&u] + 1);
                queue.push_back(w);
            }
        }
    }
    let total = *dist.get(&from)?;
    if total > cap {
        return None;
    }
    let mut path = vec![from];
    let mut cur = from;
    for step in (0..total).rev() {
        let next = g
            .neighbors(cur)
            .iter()
            .copied()
            .find(|w| scope.contains(w) && dist.get(w) == Some(&step))?;
        path.push(next);
        cur = next;
    }
    Some(path)
}

/// The sparsified structure: kept centers, the surviving auxiliary graph,
/// and one induced host path per surviving edge. Edges survive only when
/// no third kept center's ball touches their path, which is exactly what
/// makes vertex-disjoint auxiliary edges host-disjoint with no edges
/// between.
#[derive(Debug, Clone)]
pub struct PathStructure {
    /// Host ids of kept centers.
    pub s: VertexSet,
    /// Auxiliary graph on local ids `0..s.len()`.
    pub aux: Graph,
    /// Local id -> host id.
    pub aux_ids: Vec<usize>,
    /// Local auxiliary edge -> host path.
    pub path_of: BTreeMap<(usize, usize), Vec<usize>>,
}

impl PathStructure {
    pub fn local_of(&self, host: usize) -> Option<usize> {
        self.aux_ids.binary_search(&host).ok()
    }
}

/// Bernoulli-sample the kept centers and assemble the surviving structure.
pub fn sparsify_structure(
    g: &Graph,
    sg: &StructureGraph,
    d: usize,
    profile: &ConstantsProfile,
    rng: &RandomSource,
) -> Result<PathStructure> {
    let mut stream = rng.stream("sparsify", 0);
    sparsify_structure_with(g, sg, d, profile, &mut stream)
}

pub fn sparsify_structure_with(
    g: &Graph,
    sg: &StructureGraph,
    d: usize,
    profile: &ConstantsProfile,
    stream: &mut Stream,
) -> Result<PathStructure> {
    let p = profile.sparsify_p(d);
    let universe: VertexSet = sg.centers.iter().copied().collect();
    let s = bernoulli_subset(&universe, p, stream);
    assemble_path_structure(g, sg, &s, profile)
}

/// Deterministic part of sparsification: keep edges with both endpoints in
/// `s` and no third incident ball in `s`, then re-verify every structure
/// invariant.
pub fn assemble_path_structure(
    g: &Graph,
    sg: &StructureGraph,
    s: &VertexSet,
    profile: &ConstantsProfile,
) -> Result<PathStructure> {
    let aux_ids: Vec<usize> = s.iter().copied().collect();
    let local: BTreeMap<usize, usize> = aux_ids
        .iter()
        .enumerate()
        .map(|(i, &c)| (c, i))
        .collect();
    let kept_local: std::collections::BTreeSet<usize> = aux_ids
        .iter()
        .map(|c| sg.center_idx[c])
        .collect();
    let mut edges = Vec::new();
    let mut path_of = BTreeMap::new();
    for (&(i, j), path) in &sg.path_of {
        if !kept_local.contains(&i) || !kept_local.contains(&j) {
            continue;
        }
        let extraneous = sg.f_adj[&(i, j)]
            .iter()
            .any(|&c| c != i && c != j && kept_local.contains(&c));
        if extraneous {
            continue;
        }
        let (a, b) = (local[&sg.centers[i]], local[&sg.centers[j]]);
        let (lo, hi) = (a.min(b), a.max(b));
        // Orient the stored path from the smaller local id's host vertex.
        let mut p = path.clone();
        if p.first() != Some(&aux_ids[lo]) {
            p.reverse();
        }
        edges.push((lo, hi));
        path_of.insert((lo, hi), p);
    }
    let aux = Graph::from_edges(aux_ids.len(), &edges)?;
    let ps = PathStructure {
        s: s.clone(),
        aux,
        aux_ids,
        path_of,
    };
    verify_path_structure(g, &ps, profile)?;
    Ok(ps)
}

fn verify_path_structure(
    g: &Graph,
    ps: &PathStructure,
    profile: &ConstantsProfile,
) -> Result<()> {
    // Per-path: endpoints, adjacency, chordless, capped length.
    for (&(i, j), path) in &ps.path_of {
        if path.first() != Some(&ps.aux_ids[i]) || path.last() != Some(&ps.aux_ids[j]) {
            return Err(Error::StructureViolation(format!(
                "path for ({i},{j}) has wrong endpoints"
            )));
        }
        if path.len() > profile.struct_path_cap + 1 {
            return Err(Error::StructureViolation(format!(
                "path for ({i},{j}) longer than the cap"
            )));
        }
        for w in path.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                return Err(Error::StructureViolation(format!(
                    "path for ({i},{j}) breaks adjacency at ({}, {})",
                    w[0], w[1]
                )));
            }
        }
        for (a, &u) in path.iter().enumerate() {
            for &v in path.iter().skip(a + 2) {
                if g.has_edge(u, v) {
                    return Err(Error::StructureViolation(format!(
                        "path for ({i},{j}) has chord ({u}, {v})"
                    )));
                }
            }
        }
    }
    // Disjointness for vertex-disjoint auxiliary edges: no shared host
    // vertices and no host edges between their paths.
    let keys: Vec<(usize, usize)> = ps.path_of.keys().copied().collect();
    for (a, &e1) in keys.iter().enumerate() {
        for &e2 in keys.iter().skip(a + 1) {
            if e1.0 == e2.0 || e1.0 == e2.1 || e1.1 == e2.0 || e1.1 == e2.1 {
                continue;
            }
            let p1 = &ps.path_of[&e1];
            let p2: VertexSet = ps.path_of[&e2].iter().copied().collect();
            for &u in p1 {
                if p2.contains(&u) {
                    return Err(Error::StructureViolation(format!(
                        "paths for {e1:?} and {e2:?} share vertex {u}"
                    )));
                }
                for &w in g.neighbors(u) {
                    if p2.contains(&w) {
                        return Err(Error::StructureViolation(format!(
                            "edge ({u}, {w}) joins paths for {e1:?} and {e2:?}"
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Witnesses that make a structure vertex branchable: `d` auxiliary
/// neighbors whose paths, with the vertex removed, induce a disjoint union
/// of paths in the host.
#[derive(Debug, Clone)]
pub struct BranchWitness {
    /// Host id of the branchable center.
    pub center: usize,
    /// Host ids of the witnessing auxiliary neighbors.
    pub witnesses: Vec<usize>,
}

/// All branchable structure vertices with greedy witness selection:
/// neighbors are scanned in ascending host id and accepted when their path
/// stays disjoint and edge-free against the accepted ones.
pub fn branchable_set(ps: &PathStructure, g: &Graph, d: usize) -> Vec<BranchWitness> {
    let mut out = Vec::new();
    for v_local in 0..ps.aux.n() {
        let v_host = ps.aux_ids[v_local];
        let mut accepted: Vec<usize> = Vec::new();
        let mut accepted_sets: Vec<VertexSet> = Vec::new();
        for &u_local in ps.aux.neighbors(v_local) {
            if accepted.len() == d {
                break;
            }
            let key = (v_local.min(u_local), v_local.max(u_local));
            let Some(path) = ps.path_of.get(&key) else {
                continue;
            };
            let candidate: VertexSet = path.iter().copied().filter(|&x| x != v_host).collect();
            let compatible = accepted_sets.iter().all(|other| {
                candidate.iter().all(|&x| {
                    !other.contains(&x) && g.neighbors(x).iter().all(|w| !other.contains(w))
                })
            });
            if compatible {
                accepted.push(ps.aux_ids[u_local]);
                accepted_sets.push(candidate);
            }
        }
        if accepted.len() == d {
            out.push(BranchWitness {
                center: v_host,
                witnesses: accepted,
            });
        }
    }
    out
}

/// Assemble an induced subdivision from `d + 1` branchable vertices: link
/// witness endpoints pairwise through the structure minus the branch
/// vertices, concatenate the realized host paths, reduce each to an
/// induced path, and verify the result.
pub fn assemble_from_structure(
    ps: &PathStructure,
    g: &Graph,
    branch: &[BranchWitness],
    d: usize,
    profile: &ConstantsProfile,
    report: &mut PipelineReport,
) -> Result<SubdivisionCertificate> {
    let stage = "assemble";
    let t1 = branch.len();
    if t1 != d + 1 {
        return Err(
            Error::InvalidInput(format!("need d+1 = {} branch vertices, got {t1}", d + 1))
                .at_stage(stage),
        );
    }
    for w in branch {
        if w.witnesses.len() != d {
            return Err(Error::InvalidInput(format!(
                "branch vertex {} carries {} witnesses, need {d}",
                w.center,
                w.witnesses.len()
            ))
            .at_stage(stage));
        }
    }
    // Pairwise auxiliary distance floor.
    let locals: Vec<usize> = branch
        .iter()
        .map(|w| {
            ps.local_of(w.center).ok_or_else(|| {
                Error::InvalidInput(format!("{} is not a structure vertex", w.center))
                    .at_stage(stage)
            })
        })
        .collect::<Result<_>>()?;
    for (a, &x) in locals.iter().enumerate() {
        for &y in locals.iter().skip(a + 1) {
            let dist = aux_distance(&ps.aux, x, y);
            if dist < profile.branch_separation {
                return Err(Error::HypothesisNotMet(format!(
                    "branch vertices {} and {} at auxiliary distance {dist} < {}",
                    ps.aux_ids[x], ps.aux_ids[y], profile.branch_separation
                ))
                .at_stage(stage));
            }
        }
    }
    // All witnesses distinct and disjoint from the branch set.
    {
        let mut seen = VertexSet::new();
        for w in branch {
            seen.insert(w.center);
        }
        for w in branch {
            for &u in &w.witnesses {
                if !seen.insert(u) {
                    return Err(Error::HypothesisNotMet(format!(
                        "witness {u} reused across branch vertices"
                    ))
                    .at_stage(stage));
                }
            }
        }
    }
    // Residual connectivity of the structure after removing the branch.
    let branch_locals: VertexSet = locals.iter().copied().collect();
    let rest: VertexSet = (0..ps.aux.n())
        .filter(|v| !branch_locals.contains(v))
        .collect();
    let sub = induced_subgraph(&ps.aux, &rest)?;
    let need = profile.assemble_connectivity(d);
    if !is_k_connected(&sub.graph, need) {
        return Err(Error::HypothesisNotMet(format!(
            "structure minus branch is not {need}-connected"
        ))
        .at_stage(stage));
    }
    // Pair (i, j), i < j, links witness slot j-1 of i with slot i of j.
    let slot = |i: usize, j: usize| -> usize {
        if j < i {
            j
        } else {
            j - 1
        }
    };
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut pair_keys: Vec<(usize, usize)> = Vec::new();
    for i in 0..t1 {
        for j in (i + 1)..t1 {
            let a_host = branch[i].witnesses[slot(i, j)];
            let b_host = branch[j].witnesses[slot(j, i)];
            let a_local = sub.to_local[&ps.local_of(a_host).unwrap()];
            let b_local = sub.to_local[&ps.local_of(b_host).unwrap()];
            pairs.push((a_local, b_local));
            pair_keys.push((i, j));
        }
    }
    let linkage = link_pairs(&sub.graph, &pairs, &VertexSet::new()).map_err(|e| e.at_stage(stage))?;
    report.stage(
        stage,
        format!("linked {} witness pairs through the residual structure", pairs.len()),
    );

    // Concatenate host paths along each auxiliary route and reduce.
    let mut cert_paths: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (route, &(i, j)) in linkage.paths.iter().zip(&pair_keys) {
        let mut scope = VertexSet::new();
        // Witness-edge paths at both ends.
        let vi = locals[i];
        let vj = locals[j];
        let wi = ps.local_of(branch[i].witnesses[slot(i, j)]).unwrap();
        let wj = ps.local_of(branch[j].witnesses[slot(j, i)]).unwrap();
        for key in [
            (vi.min(wi), vi.max(wi)),
            (vj.min(wj), vj.max(wj)),
        ] {
            let path = ps.path_of.get(&key).ok_or_else(|| {
                Error::StructureViolation(format!("missing witness path {key:?}")).at_stage(stage)
            })?;
            scope.extend(path.iter().copied());
        }
        // Paths along the auxiliary route.
        for w in route.windows(2) {
            let a = sub.to_original[w[0]];
            let b = sub.to_original[w[1]];
            let key = (a.min(b), a.max(b));
            let path = ps.path_of.get(&key).ok_or_else(|| {
                Error::StructureViolation(format!("missing route path {key:?}")).at_stage(stage)
            })?;
            scope.extend(path.iter().copied());
        }
        let reduced = induced_path_reduce(g, &scope, branch[i].center, branch[j].center)
            .map_err(|e| e.at_stage(stage))?;
        cert_paths.insert((i, j), reduced);
    }
    let cert = SubdivisionCertificate {
        branch: branch.iter().map(|w| w.center).collect(),
        paths: cert_paths,
    };
    let check = verify_induced_subdivision(g, &cert);
    if !check.valid_induced {
        return Err(Error::StructureViolation(format!(
            "assembled certificate not induced: {:?}",
            check.violations.first().map(|v| v.kind)
        ))
        .at_stage(stage));
    }
    report.stage(
        stage,
        format!(
            "induced K_{} subdivision verified ({} vertices)",
            d + 1,
            cert.vertices().len()
        ),
    );
    Ok(cert)
}

fn aux_distance(aux: &Graph, a: usize, b: usize) -> usize {
    aux.bfs_distances(a)[b]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_named, gen_planted, gen_regular_high_girth, PlantedParams};

    #[test]
    fn decomposition_of_long_cycle() {
        let g = gen_named("cycle:1000").unwrap();
        let u: VertexSet = g.vertices().collect();
        let profile = ConstantsProfile::desk();
        let bd = ball_decomposition(&g, &u, &profile).unwrap();
        assert_eq!(bd.centers.len(), 100);
        assert!(bd.w_centers.is_empty());
        // Balls are arcs, hence trees; sizes total the cycle.
        let total: usize = bd.centers.iter().map(|&c| bd.ball_members(c).len()).sum();
        assert_eq!(total, 1000);
    }

    #[test]
    fn decomposition_of_small_tree_single_ball() {
        let g = crate::graph::load_graph("0 1\n0 2\n0 3\n3 4").unwrap();
        let u: VertexSet = [0].into();
        let bd = ball_decomposition(&g, &u, &ConstantsProfile::desk()).unwrap();
        assert_eq!(bd.centers, vec![0]);
        assert_eq!(bd.ball_members(0).len(), 5);
    }

    #[test]
    fn decomposition_rejects_small_girth() {
        let g = gen_named("petersen").unwrap();
        let u: VertexSet = g.vertices().collect();
        assert!(matches!(
            ball_decomposition(&g, &u, &ConstantsProfile::desk()),
            Err(Error::HypothesisNotMet(_))
        ));
    }

    #[test]
    fn structure_of_long_cycle_is_cycle() {
        let g = gen_named("cycle:1000").unwrap();
        let u: VertexSet = g.vertices().collect();
        let profile = ConstantsProfile::desk();
        let bd = ball_decomposition(&g, &u, &profile).unwrap();
        let sg = build_structure(&g, &bd, &profile).unwrap();
        // Consecutive centers connect; the auxiliary graph is a cycle and
        // every incidence set is just the two endpoints.
        assert_eq!(sg.h_star.n(), 100);
        assert_eq!(sg.h_star.m(), 100);
        assert!(sg.h_star.vertices().all(|v| sg.h_star.degree(v) == 2));
        assert!(sg.f_adj.values().all(|f| f.len() == 2));
    }

    /// Tiny hand-built structure over a path host; incidence sets are
    /// injected directly to steer the sparsifier.
    fn toy_structure(extraneous: bool) -> (Graph, StructureGraph) {
        let g = crate::graph::load_graph("0 3\n3 1\n1 4\n4 2").unwrap();
        let centers = vec![0, 1, 2];
        let center_idx: BTreeMap<usize, usize> =
            centers.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let h_star = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let mut path_of = BTreeMap::new();
        path_of.insert((0, 1), vec![0, 3, 1]);
        path_of.insert((1, 2), vec![1, 4, 2]);
        let mut f_adj = BTreeMap::new();
        if extraneous {
            f_adj.insert((0, 1), VertexSet::from([0, 1, 2]));
            f_adj.insert((1, 2), VertexSet::from([0, 1, 2]));
        } else {
            f_adj.insert((0, 1), VertexSet::from([0, 1]));
            f_adj.insert((1, 2), VertexSet::from([1, 2]));
        }
        (
            g,
            StructureGraph {
                centers,
                center_idx,
                h_star,
                path_of,
                f_adj,
            },
        )
    }

    #[test]
    fn keep_all_with_extraneous_incidence_empties_aux() {
        let (g, sg) = toy_structure(true);
        let mut profile = ConstantsProfile::desk();
        profile.set("sparsify_p_coeff", "1.0").unwrap();
        let ps = sparsify_structure(&g, &sg, 3, &profile, &RandomSource::new(1)).unwrap();
        assert_eq!(ps.s.len(), 3);
        assert_eq!(ps.aux.m(), 0);
    }

    #[test]
    fn keep_all_with_minimal_incidence_keeps_aux() {
        let (g, sg) = toy_structure(false);
        let mut profile = ConstantsProfile::desk();
        profile.set("sparsify_p_coeff", "1.0").unwrap();
        let ps = sparsify_structure(&g, &sg, 3, &profile, &RandomSource::new(1)).unwrap();
        assert_eq!(ps.aux.m(), 2);
    }

    #[test]
    fn planted_skeleton_sparsifies_cleanly() {
        let rng = RandomSource::new(41);
        let params = PlantedParams {
            size: 60,
            ..Default::default()
        };
        let inst = gen_planted("maxdegree", &params, &rng).unwrap();
        let profile = ConstantsProfile::desk();
        let bd = ball_decomposition(&inst.graph, inst.role("u").unwrap(), &profile).unwrap();
        let sg = build_structure(&inst.graph, &bd, &profile).unwrap();
        let ps = sparsify_structure(&inst.graph, &sg, 3, &profile, &rng).unwrap();
        // Every surviving edge carries an induced path; verification ran
        // inside assemble. Spot-check basic shape.
        assert!(ps.s.len() > 10);
        assert!(ps.aux.m() > 0);
    }

    /// 1-subdivision host of an auxiliary graph makes a clean structure:
    /// every auxiliary edge realized by a 2-edge host path.
    fn one_subdivision_structure(aux_pattern: &Graph) -> (Graph, PathStructure) {
        let n0 = aux_pattern.n();
        let mut edges = Vec::new();
        let mut path_of = BTreeMap::new();
        let mut next = n0;
        for (u, v) in aux_pattern.edges() {
            edges.push((u, next));
            edges.push((next, v));
            path_of.insert((u, v), vec![u, next, v]);
            next += 1;
        }
        let host = Graph::from_edges(next, &edges).unwrap();
        let ps = PathStructure {
            s: (0..n0).collect(),
            aux: aux_pattern.clone(),
            aux_ids: (0..n0).collect(),
            path_of,
        };
        (host, ps)
    }

    #[test]
    fn low_degree_vertices_are_not_branchable() {
        let pattern = crate::graph::load_graph("0 1\n1 2").unwrap();
        let (host, ps) = one_subdivision_structure(&pattern);
        let br = branchable_set(&ps, &host, 2);
        // Only the middle vertex has two neighbors.
        assert_eq!(br.len(), 1);
        assert_eq!(br[0].center, 1);
    }

    #[test]
    fn star_center_is_branchable() {
        let pattern = crate::graph::load_graph("0 1\n0 2\n0 3").unwrap();
        let (host, ps) = one_subdivision_structure(&pattern);
        let br = branchable_set(&ps, &host, 3);
        assert_eq!(br.len(), 1);
        assert_eq!(br[0].center, 0);
        assert_eq!(br[0].witnesses, vec![1, 2, 3]);
    }

    #[test]
    fn host_chord_blocks_cowitnessing() {
        // Star with four arms; a host chord joins the subdivision vertices
        // of arms 1 and 2, so those two arms never co-witness.
        let pattern = crate::graph::load_graph("0 1\n0 2\n0 3\n0 4").unwrap();
        let (host0, ps) = one_subdivision_structure(&pattern);
        let sub_1 = ps.path_of[&(0, 1)][1];
        let sub_2 = ps.path_of[&(0, 2)][1];
        let mut edges = host0.edges();
        edges.push((sub_1, sub_2));
        let host = Graph::from_edges(host0.n(), &edges).unwrap();
        let br = branchable_set(&ps, &host, 3);
        let center = br.iter().find(|w| w.center == 0).unwrap();
        // Greedy keeps arm 1, skips arm 2, then takes arms 3 and 4.
        assert_eq!(center.witnesses, vec![1, 3, 4]);
    }

    #[test]
    fn assemble_k3_from_expander_structure() {
        let rng = RandomSource::new(8);
        let pattern = gen_regular_high_girth(100, 6, 5, &rng, 80).unwrap();
        let (host, ps) = one_subdivision_structure(&pattern);
        let d = 2;
        let br = branchable_set(&ps, &host, d);
        // Greedily pick three branchable vertices pairwise far apart.
        let profile = ConstantsProfile::desk();
        let mut chosen: Vec<BranchWitness> = Vec::new();
        for w in &br {
            if chosen.iter().all(|c| {
                aux_distance(
                    &ps.aux,
                    ps.local_of(c.center).unwrap(),
                    ps.local_of(w.center).unwrap(),
                ) >= profile.branch_separation
            }) {
                chosen.push(w.clone());
                if chosen.len() == d + 1 {
                    break;
                }
            }
        }
        assert_eq!(chosen.len(), d + 1, "expander must offer separated branchables");
        let mut report = PipelineReport::new();
        let cert =
            assemble_from_structure(&ps, &host, &chosen, d, &profile, &mut report).unwrap();
        assert_eq!(cert.order(), 3);
        assert!(verify_induced_subdivision(&host, &cert).valid_induced);
    }

    #[test]
    fn assemble_rejects_close_branch_vertices() {
        let rng = RandomSource::new(8);
        let pattern = gen_regular_high_girth(60, 4, 5, &rng, 80).unwrap();
        let (host, ps) = one_subdivision_structure(&pattern);
        let br = branchable_set(&ps, &host, 2);
        // Take a branchable vertex and one of its auxiliary neighbors.
        let first = br[0].clone();
        let neighbor_host = ps.aux.neighbors(ps.local_of(first.center).unwrap())[0];
        let second = br
            .iter()
            .find(|w| ps.local_of(w.center).unwrap() == neighbor_host)
            .unwrap()
            .clone();
        let third = br.last().unwrap().clone();
        let err = assemble_from_structure(
            &ps,
            &host,
            &[first, second, third],
            2,
            &ConstantsProfile::desk(),
            &mut PipelineReport::new(),
        )
        .unwrap_err();
        assert!(matches!(err.root(), Error::HypothesisNotMet(_)));
    }

    #[test]
    fn assemble_reports_unroutable_linkage() {
        // Cycle pattern: after deleting the three branch vertices the
        // remaining structure splits, so the witness pairs cannot be
        // linked. The residual-connectivity gate is disabled to reach the
        // router.
        let pattern = gen_named("cycle:12").unwrap();
        let (host, ps) = one_subdivision_structure(&pattern);
        let br = branchable_set(&ps, &host, 2);
        let picks: Vec<BranchWitness> = [0usize, 4, 8]
            .iter()
            .map(|&c| br.iter().find(|w| w.center == c).unwrap().clone())
            .collect();
        let mut profile = ConstantsProfile::desk();
        profile.set("assemble_connectivity_coeff", "0").unwrap();
        let err = assemble_from_structure(
            &ps,
            &host,
            &picks,
            2,
            &profile,
            &mut PipelineReport::new(),
        )
        .unwrap_err();
        assert!(matches!(err.root(), Error::NotFound(_)));
    }
}
