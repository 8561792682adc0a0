//! Subdivision certificates: the data carried by every positive result,
//! verifiers for plain and induced validity, a budgeted exact search used
//! as ground truth at small orders, and the lifting map that transfers a
//! subdivision of an auxiliary graph back into the host.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::error::Error;
use crate::graph::{Graph, VertexSet};
use crate::Result;

/// A claimed K_t subdivision: `t` branch vertices and one host path per
/// unordered branch pair. Paths store full vertex sequences; the key
/// `(i, j)` indexes into `branch` with `i < j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdivisionCertificate {
    pub branch: Vec<usize>,
    pub paths: BTreeMap<(usize, usize), Vec<usize>>,
}

impl SubdivisionCertificate {
    pub fn order(&self) -> usize {
        self.branch.len()
    }

    /// All host vertices mentioned by the certificate.
    pub fn vertices(&self) -> VertexSet {
        let mut out: VertexSet = self.branch.iter().copied().collect();
        for path in self.paths.values() {
            out.extend(path.iter().copied());
        }
        out
    }

    /// Serialize to the certificate text format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "branch {}:", self.branch.len());
        for v in &self.branch {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
        for ((i, j), path) in &self.paths {
            let _ = write!(out, "path {} {}:", i + 1, j + 1);
            for v in path {
                let _ = write!(out, " {v}");
            }
            out.push('\n');
        }
        out
    }

    /// Parse the text format (`branch t: ...` then `path i j: ...` lines,
    /// 1-based indices into the branch list).
    pub fn from_text(text: &str) -> Result<SubdivisionCertificate> {
        let mut branch: Option<Vec<usize>> = None;
        let mut paths = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |msg: &str| Error::Parse {
                line: idx + 1,
                msg: msg.to_string(),
            };
            if let Some(rest) = line.strip_prefix("branch ") {
                let (count, ids) = rest.split_once(':').ok_or(parse_err("missing `:`"))?;
                let count: usize = count.trim().parse().map_err(|_| parse_err("bad count"))?;
                let vs: Vec<usize> = ids
                    .split_whitespace()
                    .map(|t| t.parse().map_err(|_| parse_err("bad vertex id")))
                    .collect::<Result<_>>()?;
                if vs.len() != count {
                    return Err(parse_err("branch count mismatch"));
                }
                branch = Some(vs);
            } else if let Some(rest) = line.strip_prefix("path ") {
                let (pair, ids) = rest.split_once(':').ok_or(parse_err("missing `:`"))?;
                let mut it = pair.split_whitespace();
                let i: usize = it
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or(parse_err("bad pair index"))?;
                let j: usize = it
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or(parse_err("bad pair index"))?;
                if i == 0 || j == 0 || i >= j {
                    return Err(parse_err("pair indices must be 1-based with i < j"));
                }
                let vs: Vec<usize> = ids
                    .split_whitespace()
                    .map(|t| t.parse().map_err(|_| parse_err("bad vertex id")))
                    .collect::<Result<_>>()?;
                paths.insert((i - 1, j - 1), vs);
            } else {
                return Err(parse_err("unrecognized line"));
            }
        }
        let branch = branch.ok_or(Error::Parse {
            line: 0,
            msg: "missing branch line".into(),
        })?;
        Ok(SubdivisionCertificate { branch, paths })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    BranchRange,
    BranchDuplicate,
    MissingPair,
    ExtraPair,
    EndpointMismatch,
    NotAPath,
    PathRepeat,
    BranchOnPath,
    PathOverlap,
    Chord,
    CrossEdge,
}

#[derive(Debug, Clone)]
pub struct Violation {
    pub kind: ViolationKind,
    pub witness: Vec<usize>,
}

/// Result of certificate verification. `valid_induced` implies
/// `valid_plain`; `violations` is empty exactly when the strongest claimed
/// flag holds.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub valid_plain: bool,
    pub valid_induced: bool,
    pub violations: Vec<Violation>,
}

/// Check the plain subdivision conditions: all pairs present, each path a
/// walk of adjacent distinct vertices with the right endpoints, internal
/// vertices disjoint from branch vertices and from every other path.
pub fn verify_subdivision(g: &Graph, c: &SubdivisionCertificate) -> VerificationReport {
    let mut violations = Vec::new();
    let t = c.branch.len();
    let branch_set: VertexSet = c.branch.iter().copied().collect();
    if branch_set.len() != t {
        violations.push(Violation {
            kind: ViolationKind::BranchDuplicate,
            witness: c.branch.clone(),
        });
    }
    for &v in &c.branch {
        if v >= g.n() {
            violations.push(Violation {
                kind: ViolationKind::BranchRange,
                witness: vec![v],
            });
        }
    }
    if !violations.is_empty() {
        return VerificationReport {
            valid_plain: false,
            valid_induced: false,
            violations,
        };
    }
    for i in 0..t {
        for j in (i + 1)..t {
            if !c.paths.contains_key(&(i, j)) {
                violations.push(Violation {
                    kind: ViolationKind::MissingPair,
                    witness: vec![i, j],
                });
            }
        }
    }
    for (&(i, j), path) in &c.paths {
        if j >= t || i >= j {
            violations.push(Violation {
                kind: ViolationKind::ExtraPair,
                witness: vec![i, j],
            });
            continue;
        }
        if path.first() != Some(&c.branch[i]) || path.last() != Some(&c.branch[j]) {
            violations.push(Violation {
                kind: ViolationKind::EndpointMismatch,
                witness: path.clone(),
            });
            continue;
        }
        let mut seen = VertexSet::new();
        for w in path.windows(2) {
            if w[0] >= g.n() || w[1] >= g.n() || !g.has_edge(w[0], w[1]) {
                violations.push(Violation {
                    kind: ViolationKind::NotAPath,
                    witness: vec![w[0], w[1]],
                });
            }
        }
        for &v in path {
            if !seen.insert(v) {
                violations.push(Violation {
                    kind: ViolationKind::PathRepeat,
                    witness: vec![v],
                });
            }
        }
        for &v in &path[1..path.len().saturating_sub(1)] {
            if branch_set.contains(&v) {
                violations.push(Violation {
                    kind: ViolationKind::BranchOnPath,
                    witness: vec![v],
                });
            }
        }
    }
    // Internal vertices of distinct paths must not meet.
    let mut owner: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for (&key, path) in &c.paths {
        if path.len() < 2 {
            continue;
        }
        for &v in &path[1..path.len() - 1] {
            if let Some(_prev) = owner.insert(v, key) {
                violations.push(Violation {
                    kind: ViolationKind::PathOverlap,
                    witness: vec![v],
                });
            }
        }
    }
    let valid_plain = violations.is_empty();
    VerificationReport {
        valid_plain,
        valid_induced: false,
        violations,
    }
}

/// Check the induced condition on top of plain validity: the host edges
/// among certificate vertices are exactly the consecutive path pairs.
pub fn verify_induced_subdivision(g: &Graph, c: &SubdivisionCertificate) -> VerificationReport {
    let mut report = verify_subdivision(g, c);
    if !report.valid_plain {
        return report;
    }
    // Allowed adjacency: consecutive vertices of some path.
    let mut allowed: BTreeSet<(usize, usize)> = BTreeSet::new();
    for path in c.paths.values() {
        for w in path.windows(2) {
            allowed.insert((w[0].min(w[1]), w[0].max(w[1])));
        }
    }
    // Which path (if unique) a vertex belongs to, for violation labeling.
    let mut on_path: BTreeMap<usize, BTreeSet<(usize, usize)>> = BTreeMap::new();
    for (&key, path) in &c.paths {
        for &v in path {
            on_path.entry(v).or_default().insert(key);
        }
    }
    let verts: Vec<usize> = c.vertices().into_iter().collect();
    for (ai, &u) in verts.iter().enumerate() {
        for &v in &verts[ai + 1..] {
            if g.has_edge(u, v) && !allowed.contains(&(u, v)) {
                let same_path = on_path[&u].intersection(&on_path[&v]).next().is_some();
                report.violations.push(Violation {
                    kind: if same_path {
                        ViolationKind::Chord
                    } else {
                        ViolationKind::CrossEdge
                    },
                    witness: vec![u, v],
                });
            }
        }
    }
    report.valid_induced = report.violations.is_empty();
    report
}

/// Exact, budgeted search for an induced K_t subdivision. Returns a
/// certificate, `None` when provably absent, or `BudgetExhausted` when the
/// node budget ran out before the search space was covered.
pub fn brute_force_induced(
    g: &Graph,
    t: usize,
    budget: usize,
) -> Result<Option<SubdivisionCertificate>> {
    if t < 2 {
        return Err(Error::InvalidInput("need t >= 2".into()));
    }
    let cands: Vec<usize> = g.vertices().filter(|&v| g.degree(v) >= t - 1).collect();
    if cands.len() < t {
        return Ok(None);
    }
    let mut nodes = 0usize;
    let mut subset = Vec::with_capacity(t);
    let found = pick_branch(g, t, &cands, 0, &mut subset, &mut nodes, budget)?;
    Ok(found)
}

fn pick_branch(
    g: &Graph,
    t: usize,
    cands: &[usize],
    from: usize,
    subset: &mut Vec<usize>,
    nodes: &mut usize,
    budget: usize,
) -> Result<Option<SubdivisionCertificate>> {
    if subset.len() == t {
        return search_paths(g, subset, nodes, budget, true);
    }
    for idx in from..cands.len() {
        if cands.len() - idx < t - subset.len() {
            break;
        }
        subset.push(cands[idx]);
        if let Some(cert) = pick_branch(g, t, cands, idx + 1, subset, nodes, budget)? {
            subset.pop();
            return Ok(Some(cert));
        }
        subset.pop();
    }
    Ok(None)
}

/// Backtracking path-system search for a fixed branch set. With
/// `induced = true` the partial system is pruned so that the final union is
/// an induced subdivision; otherwise only internal disjointness is kept.
pub(crate) fn search_paths(
    g: &Graph,
    branch: &[usize],
    nodes: &mut usize,
    budget: usize,
    induced: bool,
) -> Result<Option<SubdivisionCertificate>> {
    let t = branch.len();
    let branch_set: VertexSet = branch.iter().copied().collect();
    let mut pairs = Vec::new();
    for i in 0..t {
        for j in (i + 1)..t {
            pairs.push((i, j));
        }
    }
    // In the induced case an adjacent branch pair must be joined by the
    // edge itself; pin those paths first.
    let mut paths: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    let mut used: VertexSet = VertexSet::new();
    if induced {
        for &(i, j) in &pairs {
            if g.has_edge(branch[i], branch[j]) {
                paths.insert((i, j), vec![branch[i], branch[j]]);
            }
        }
    }
    let open: Vec<(usize, usize)> = pairs
        .iter()
        .copied()
        .filter(|k| !paths.contains_key(k))
        .collect();
    if assign_paths(
        g,
        branch,
        &branch_set,
        &open,
        0,
        &mut paths,
        &mut used,
        nodes,
        budget,
        induced,
    )? {
        let cert = SubdivisionCertificate {
            branch: branch.to_vec(),
            paths,
        };
        return Ok(Some(cert));
    }
    Ok(None)
}

#[allow(clippy::too_many_arguments)]
fn assign_paths(
    g: &Graph,
    branch: &[usize],
    branch_set: &VertexSet,
    open: &[(usize, usize)],
    k: usize,
    paths: &mut BTreeMap<(usize, usize), Vec<usize>>,
    used: &mut VertexSet,
    nodes: &mut usize,
    budget: usize,
    induced: bool,
) -> Result<bool> {
    if k == open.len() {
        return Ok(true);
    }
    let (i, j) = open[k];
    let (a, b) = (branch[i], branch[j]);
    let mut path = vec![a];
    extend_path(
        g, branch, branch_set, open, k, paths, used, &mut path, b, nodes, budget, induced,
    )
}

/// Grow the current path one vertex at a time, checking the induced
/// constraints incrementally.
#[allow(clippy::too_many_arguments)]
fn extend_path(
    g: &Graph,
    branch: &[usize],
    branch_set: &VertexSet,
    open: &[(usize, usize)],
    k: usize,
    paths: &mut BTreeMap<(usize, usize), Vec<usize>>,
    used: &mut VertexSet,
    path: &mut Vec<usize>,
    target: usize,
    nodes: &mut usize,
    budget: usize,
    induced: bool,
) -> Result<bool> {
    *nodes += 1;
    if *nodes > budget {
        return Err(Error::BudgetExhausted(format!(
            "search truncated after {budget} nodes"
        )));
    }
    let cur = *path.last().unwrap();
    for &next in g.neighbors(cur) {
        if next == target {
            if induced && path.len() >= 2 && g.has_edge(path[0], target) {
                // The branch pair is adjacent, so only the direct edge can
                // realize it; that case was pinned beforehand.
                continue;
            }
            // Closing vertex must not be adjacent to interior vertices
            // other than the last (it is a branch vertex; interior already
            // checked against branch adjacency except for the endpoint
            // allowance).
            let mut candidate = path.clone();
            candidate.push(target);
            if induced && violates_induced_close(g, &candidate) {
                continue;
            }
            let key = open[k];
            for &v in &candidate[1..candidate.len() - 1] {
                used.insert(v);
            }
            paths.insert(key, candidate.clone());
            if assign_paths(
                g, branch, branch_set, open, k + 1, paths, used, nodes, budget, induced,
            )? {
                return Ok(true);
            }
            paths.remove(&key);
            for &v in &candidate[1..candidate.len() - 1] {
                used.remove(&v);
            }
            continue;
        }
        if branch_set.contains(&next) || used.contains(&next) || path.contains(&next) {
            continue;
        }
        if induced && !admissible_internal(g, branch, branch_set, paths, path, next, target) {
            continue;
        }
        path.push(next);
        if extend_path(
            g, branch, branch_set, open, k, paths, used, path, target, nodes, budget, induced,
        )? {
            return Ok(true);
        }
        path.pop();
    }
    Ok(false)
}

/// Induced-mode pruning for a prospective internal vertex: it may touch the
/// current path only at its tip, the start branch vertex only as first
/// interior vertex, the target only when closing, no other branch vertex,
/// and nothing already used by other paths.
fn admissible_internal(
    g: &Graph,
    _branch: &[usize],
    branch_set: &VertexSet,
    paths: &BTreeMap<(usize, usize), Vec<usize>>,
    path: &[usize],
    next: usize,
    target: usize,
) -> bool {
    let start = path[0];
    for &b in branch_set {
        if b == target || b == start {
            continue;
        }
        if g.has_edge(next, b) {
            return false;
        }
    }
    if g.has_edge(next, start) && path.len() != 1 {
        return false;
    }
    // No chord back into the current path (anything before the tip).
    for &v in &path[..path.len() - 1] {
        if v != start && g.has_edge(next, v) {
            return false;
        }
    }
    // No edge to any vertex of an already fixed path (their endpoints are
    // branch vertices, checked above; interiors must be independent).
    for (key, other) in paths {
        let _ = key;
        for &v in &other[1..other.len().saturating_sub(1)] {
            if g.has_edge(next, v) {
                return false;
            }
        }
    }
    true
}

/// Final closing check: the vertex before the target must be the only
/// interior vertex adjacent to it.
fn violates_induced_close(g: &Graph, candidate: &[usize]) -> bool {
    let target = *candidate.last().unwrap();
    for &v in &candidate[1..candidate.len() - 2] {
        if g.has_edge(v, target) {
            return true;
        }
    }
    false
}

/// Transfer a subdivision certificate of an auxiliary graph into the host:
/// each auxiliary edge is replaced by its realizing host path and paths are
/// concatenated along the auxiliary certificate's routes.
///
/// `realization` is keyed by auxiliary edges `(u, v)` with `u < v` (local
/// auxiliary ids); the stored host sequence runs from the host vertex
/// realizing `u` to the one realizing `v`. Realizations of distinct
/// auxiliary edges must be internally disjoint.
pub fn lift_subdivision(
    host: &Graph,
    aux: &Graph,
    aux_cert: &SubdivisionCertificate,
    realization: &BTreeMap<(usize, usize), Vec<usize>>,
) -> Result<SubdivisionCertificate> {
    let aux_report = verify_subdivision(aux, aux_cert);
    if !aux_report.valid_plain {
        return Err(Error::LiftConflict(
            "auxiliary certificate is not a valid plain subdivision".into(),
        ));
    }
    // Host image of each auxiliary vertex, derived from realization
    // endpoints and checked for consistency.
    let mut image: BTreeMap<usize, usize> = BTreeMap::new();
    for (&(u, v), path) in realization {
        if path.len() < 2 {
            return Err(Error::LiftConflict(format!(
                "realization of ({u},{v}) has fewer than 2 vertices"
            )));
        }
        for (aux_v, host_v) in [(u, path[0]), (v, *path.last().unwrap())] {
            if let Some(&prev) = image.get(&aux_v) {
                if prev != host_v {
                    return Err(Error::LiftConflict(format!(
                        "auxiliary vertex {aux_v} realized by both {prev} and {host_v}"
                    )));
                }
            } else {
                image.insert(aux_v, host_v);
            }
        }
    }
    let host_branch: Vec<usize> = aux_cert
        .branch
        .iter()
        .map(|&b| {
            image.get(&b).copied().ok_or(Error::LiftConflict(format!(
                "no realization touches auxiliary branch vertex {b}"
            )))
        })
        .collect::<Result<_>>()?;

    let mut host_paths: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (&key, aux_path) in &aux_cert.paths {
        let mut out: Vec<usize> = Vec::new();
        for w in aux_path.windows(2) {
            let (x, y) = (w[0], w[1]);
            let (lo, hi) = (x.min(y), x.max(y));
            let real = realization.get(&(lo, hi)).ok_or(Error::LiftConflict(format!(
                "auxiliary edge ({lo},{hi}) has no realization"
            )))?;
            let mut seg = real.clone();
            if x > y {
                seg.reverse();
            }
            if out.is_empty() {
                out.extend(seg);
            } else {
                if out.last() != seg.first() {
                    return Err(Error::LiftConflict(format!(
                        "concatenation mismatch at auxiliary edge ({lo},{hi})"
                    )));
                }
                out.extend(seg.into_iter().skip(1));
            }
        }
        host_paths.insert(key, out);
    }
    let lifted = SubdivisionCertificate {
        branch: host_branch,
        paths: host_paths,
    };
    let report = verify_subdivision(host, &lifted);
    if !report.valid_plain {
        return Err(Error::LiftConflict(format!(
            "lifted certificate invalid: {:?}",
            report.violations.first().map(|v| v.kind)
        )));
    }
    Ok(lifted)
}

/// Shortest path from `a` to `b` inside `G[vs]`, lexicographically smallest
/// among shortest. Shortest implies chordless implies induced.
pub fn induced_path_reduce(g: &Graph, vs: &VertexSet, a: usize, b: usize) -> Result<Vec<usize>> {
    if !vs.contains(&a) || !vs.contains(&b) {
        return Err(Error::InvalidInput(
            "endpoints must belong to the vertex set".into(),
        ));
    }
    // BFS from b restricted to vs gives distance-to-target labels.
    let mut dist: BTreeMap<usize, usize> = BTreeMap::new();
    dist.insert(b, 0);
    let mut queue = std::collections::VecDeque::from([b]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if vs.contains(&w) && !dist.contains_key(&w) {
                dist.insert(w, dist[&u] + 1);
                queue.push_back(w);
            }
        }
    }
    let Some(&total) = dist.get(&a) else {
        return Err(Error::Disconnected(format!(
            "no path from {a} to {b} within the given set"
        )));
    };
    // Walk forward, always taking the smallest neighbor that still lies on
    // a shortest path.
    let mut path = vec![a];
    let mut cur = a;
    for step in (0..total).rev() {
        let next = g
            .neighbors(cur)
            .iter()
            .copied()
            .find(|w| dist.get(w) == Some(&step))
            .expect("BFS labels guarantee a descent");
        path.push(next);
        cur = next;
    }
    Ok(path)
}
