//! Deterministic construction of test graphs: a small named catalog,
//! random regular graphs with a girth floor (pairing model plus edge-swap
//! repair), and planted instances for each lemma's hypotheses.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::graph::{girth, Graph, VertexSet};
use crate::rng::{RandomSource, Stream};
use crate::Result;

/// A named standard graph with canonical vertex ids.
///
/// Supported: `petersen`, `heawood`, `mcgee`, `k4`, `k5`, `k33`,
/// `cycle:N`, `grid:RxC`.
pub fn gen_named(name: &str) -> Result<Graph> {
    if let Some(n) = name.strip_prefix("cycle:") {
        let n: usize = n
            .parse()
            .map_err(|_| Error::UnknownName(name.to_string()))?;
        if n < 3 {
            return Err(Error::InvalidInput("cycle needs at least 3 vertices".into()));
        }
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        return Graph::from_edges(n, &edges);
    }
    if let Some(dims) = name.strip_prefix("grid:") {
        let (r, c) = dims
            .split_once('x')
            .and_then(|(a, b)| Some((a.parse().ok()?, b.parse().ok()?)))
            .ok_or_else(|| Error::UnknownName(name.to_string()))?;
        let (r, c): (usize, usize) = (r, c);
        if r == 0 || c == 0 {
            return Err(Error::InvalidInput("grid dimensions must be positive".into()));
        }
        let mut edges = Vec::new();
        for i in 0..r {
            for j in 0..c {
                let v = i * c + j;
                if j + 1 < c {
                    edges.push((v, v + 1));
                }
                if i + 1 < r {
                    edges.push((v, v + c));
                }
            }
        }
        return Graph::from_edges(r * c, &edges);
    }
    match name {
        "k4" => complete(4),
        "k5" => complete(5),
        "k33" => {
            let mut edges = Vec::new();
            for u in 0..3 {
                for v in 3..6 {
                    edges.push((u, v));
                }
            }
            Graph::from_edges(6, &edges)
        }
        "petersen" => Graph::from_edges(
            10,
            &[
                (0, 1),
                (0, 4),
                (0, 5),
                (1, 2),
                (1, 6),
                (2, 3),
                (2, 7),
                (3, 4),
                (3, 8),
                (4, 9),
                (5, 7),
                (5, 8),
                (6, 8),
                (6, 9),
                (7, 9),
            ],
        ),
        "heawood" => Graph::from_edges(
            14,
            &[
                (0, 1),
                (0, 5),
                (0, 13),
                (1, 2),
                (1, 10),
                (2, 3),
                (2, 7),
                (3, 4),
                (3, 12),
                (4, 5),
                (4, 9),
                (5, 6),
                (6, 7),
                (6, 11),
                (7, 8),
                (8, 9),
                (8, 13),
                (9, 10),
                (10, 11),
                (11, 12),
                (12, 13),
            ],
        ),
        // LCF notation [12, 7, -7]^8 over a 24-cycle.
        "mcgee" => {
            let mut edges: Vec<(usize, usize)> = (0..24).map(|i| (i, (i + 1) % 24)).collect();
            let shifts = [12i64, 7, -7];
            for i in 0..24 {
                let s = shifts[i % 3];
                let j = ((i as i64 + s).rem_euclid(24)) as usize;
                if i < j {
                    edges.push((i, j));
                }
            }
            Graph::from_edges(24, &edges)
        }
        other => Err(Error::UnknownName(other.to_string())),
    }
}

pub fn complete(n: usize) -> Result<Graph> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges)
}

/// `d`-regular graph on `n` vertices with girth at least `g_min`, by pairing
/// up degree stubs and repairing short cycles with 2-edge swaps.
pub fn gen_regular_high_girth(
    n: usize,
    d: usize,
    g_min: usize,
    rng: &RandomSource,
    max_attempts: usize,
) -> Result<Graph> {
    if !(n * d).is_multiple_of(2) {
        return Err(Error::InvalidInput(format!(
            "n*d must be even, got n={n} d={d}"
        )));
    }
    if d >= n {
        return Err(Error::InvalidInput(format!("need d < n, got n={n} d={d}")));
    }
    if d >= 3 && g_min >= 3 {
        let bound = crate::graph::moore_floor(d, g_min)?;
        if (n as u128) < bound.floor {
            return Err(Error::InvalidInput(format!(
                "n={n} below the order floor {} for d={d}, girth {g_min}",
                bound.floor
            )));
        }
    }
    for attempt in 0..max_attempts {
        let mut stream = rng.stream("gen_regular_high_girth", attempt as u64);
        if let Some(g) = pairing_attempt(n, d, g_min, &mut stream) {
            return Ok(g);
        }
    }
    Err(Error::AttemptsExhausted(format!(
        "no {d}-regular graph of girth >= {g_min} on {n} vertices in {max_attempts} attempts"
    )))
}

fn pairing_attempt(n: usize, d: usize, g_min: usize, stream: &mut Stream) -> Option<Graph> {
    // Pairing model: shuffle d copies of each vertex and read off
    // consecutive pairs. Self-loops and parallel edges are repaired by
    // double-edge swaps instead of wholesale rejection, which keeps dense
    // degrees feasible.
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    stream.shuffle(&mut stubs);
    let mut edges: Vec<(usize, usize)> = stubs
        .chunks(2)
        .map(|p| (p[0].min(p[1]), p[0].max(p[1])))
        .collect();
    let mut count: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &e in &edges {
        *count.entry(e).or_insert(0) += 1;
    }
    let is_bad = |e: (usize, usize), count: &BTreeMap<(usize, usize), usize>| {
        e.0 == e.1 || count[&e] > 1
    };
    for _ in 0..200 * edges.len().max(16) {
        let Some(i) = edges.iter().position(|&e| is_bad(e, &count)) else {
            break;
        };
        // Swap the bad edge with a random partner, orienting randomly.
        let j = stream.next_below(edges.len() as u64) as usize;
        if j == i {
            continue;
        }
        let (a, b) = edges[i];
        let (mut x, mut y) = edges[j];
        if stream.bernoulli(0.5) {
            std::mem::swap(&mut x, &mut y);
        }
        let e1 = (a.min(x), a.max(x));
        let e2 = (b.min(y), b.max(y));
        if a == x || b == y || e1 == e2 || count.contains_key(&e1) || count.contains_key(&e2) {
            continue;
        }
        for e in [edges[i], edges[j]] {
            let c = count.get_mut(&e).unwrap();
            *c -= 1;
            if *c == 0 {
                count.remove(&e);
            }
        }
        edges[i] = e1;
        edges[j] = e2;
        *count.entry(e1).or_insert(0) += 1;
        *count.entry(e2).or_insert(0) += 1;
    }
    if edges.iter().any(|&e| is_bad(e, &count)) {
        return None;
    }
    let mut adj: Vec<VertexSet> = vec![VertexSet::new(); n];
    for &(u, v) in &edges {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    // Swap-repair: while a short cycle exists, break one of its edges by a
    // double-edge swap that is checked not to create new short cycles.
    for _ in 0..40 * n.max(64) {
        let cyc = match shortest_cycle_below(&adj, g_min) {
            None => {
                let final_edges: Vec<(usize, usize)> = (0..n)
                    .flat_map(|u| adj[u].iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
                    .collect();
                let g = Graph::from_edges(n, &final_edges).ok()?;
                debug_assert!(g.vertices().all(|v| g.degree(v) == d));
                return Some(g);
            }
            Some(c) => c,
        };
        let i = stream.next_below(cyc.len() as u64) as usize;
        let (a, b) = (cyc[i], cyc[(i + 1) % cyc.len()]);
        let mut done = false;
        for _ in 0..256 {
            let x = stream.next_below(n as u64) as usize;
            if adj[x].is_empty() || x == a || x == b {
                continue;
            }
            let yi = stream.next_below(adj[x].len() as u64) as usize;
            let y = *adj[x].iter().nth(yi).unwrap();
            if y == a || y == b {
                continue;
            }
            // Replace {a,b},{x,y} with {a,x},{b,y}, keeping the graph
            // simple and refusing swaps whose new edges would close a
            // cycle shorter than the floor.
            if adj[a].contains(&x) || adj[b].contains(&y) {
                continue;
            }
            adj[a].remove(&b);
            adj[b].remove(&a);
            adj[x].remove(&y);
            adj[y].remove(&x);
            let ok = dist_at_least(&adj, a, x, g_min - 1) && {
                adj[a].insert(x);
                adj[x].insert(a);
                let second = dist_at_least(&adj, b, y, g_min - 1);
                if !second {
                    adj[a].remove(&x);
                    adj[x].remove(&a);
                }
                second
            };
            if ok {
                adj[b].insert(y);
                adj[y].insert(b);
                done = true;
                break;
            }
            adj[a].insert(b);
            adj[b].insert(a);
            adj[x].insert(y);
            adj[y].insert(x);
        }
        if !done {
            return None;
        }
    }
    None
}

/// True when `dist(u, v) >= floor` (BFS truncated at `floor - 1`).
fn dist_at_least(adj: &[VertexSet], u: usize, v: usize, floor: usize) -> bool {
    if u == v {
        return floor == 0;
    }
    let mut dist: BTreeMap<usize, usize> = BTreeMap::new();
    dist.insert(u, 0);
    let mut queue = std::collections::VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        if dist[&x] + 1 >= floor {
            continue;
        }
        for &w in &adj[x] {
            if w == v {
                return false;
            }
            if !dist.contains_key(&w) {
                dist.insert(w, dist[&x] + 1);
                queue.push_back(w);
            }
        }
    }
    true
}

/// Some cycle of length below `g_min`, as a vertex sequence, if one exists.
fn shortest_cycle_below(adj: &[VertexSet], g_min: usize) -> Option<Vec<usize>> {
    let n = adj.len();
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        for d in dist.iter_mut() {
            *d = usize::MAX;
        }
        dist[root] = 0;
        parent[root] = usize::MAX;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            if 2 * dist[u] + 1 >= g_min {
                break;
            }
            for &w in &adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if w != parent[u] && dist[w] >= dist[u] {
                    let len = dist[u] + dist[w] + 1;
                    if len < g_min {
                        // Reconstruct the closed walk through root.
                        let mut left = vec![u];
                        while *left.last().unwrap() != root {
                            left.push(parent[*left.last().unwrap()]);
                        }
                        let mut right = vec![w];
                        while *right.last().unwrap() != root {
                            right.push(parent[*right.last().unwrap()]);
                        }
                        left.reverse();
                        right.pop();
                        right.reverse();
                        left.extend(right.into_iter().rev());
                        return Some(left);
                    }
                }
            }
        }
    }
    None
}

/// One manifest line: a named hypothesis check evaluated at generation time.
#[derive(Debug, Clone)]
pub struct ManifestCheck {
    pub name: String,
    pub pass: bool,
    pub details: String,
}

/// A generated instance: the host graph, labeled role sets, and the checks
/// the construction is built to satisfy.
#[derive(Debug, Clone)]
pub struct PlantedInstance {
    pub graph: Graph,
    pub roles: BTreeMap<String, VertexSet>,
    pub manifest: Vec<ManifestCheck>,
}

impl PlantedInstance {
    pub fn role(&self, name: &str) -> Result<&VertexSet> {
        self.roles
            .get(name)
            .ok_or_else(|| Error::InvalidInput(format!("instance has no role `{name}`")))
    }

    /// Render roles plus manifest as a text block.
    pub fn manifest_text(&self) -> String {
        let mut out = String::new();
        for (name, set) in &self.roles {
            out.push_str(&format!(
                "role {}: {}\n",
                name,
                set.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            ));
        }
        for check in &self.manifest {
            out.push_str(&format!(
                "check {}: {} ({})\n",
                check.name,
                if check.pass { "pass" } else { "FAIL" },
                check.details
            ));
        }
        out
    }

    fn ensure_all_pass(self) -> Result<PlantedInstance> {
        if let Some(bad) = self.manifest.iter().find(|c| !c.pass) {
            return Err(Error::ConstructionFailed(format!(
                "manifest check `{}` failed: {}",
                bad.name, bad.details
            )));
        }
        Ok(self)
    }
}

/// Parse a roles file produced by [`PlantedInstance::manifest_text`].
pub fn parse_roles(text: &str) -> Result<BTreeMap<String, VertexSet>> {
    let mut roles = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if !line.starts_with("role ") {
            continue;
        }
        let rest = &line[5..];
        let (name, ids) = rest.split_once(':').ok_or(Error::Parse {
            line: idx + 1,
            msg: "expected `role name: ids`".into(),
        })?;
        let mut set = VertexSet::new();
        for tok in ids.split_whitespace() {
            set.insert(tok.parse().map_err(|_| Error::Parse {
                line: idx + 1,
                msg: format!("bad vertex id `{tok}`"),
            })?);
        }
        roles.insert(name.trim().to_string(), set);
    }
    Ok(roles)
}

/// Parameters accepted by [`gen_planted`]; unused fields are ignored by
/// kinds that do not read them.
#[derive(Debug, Clone)]
pub struct PlantedParams {
    pub d: usize,
    /// `unbalanced`: the target |A|/|B| ratio (pattern size follows).
    pub ratio: usize,
    /// `case1` / `largesub`: hub-count parameter (must be 3 * odd for the
    /// triple system); `maxdegree` / `case2` / `structure`: center count.
    pub size: usize,
    /// Required girth of the delivered instance; construction fails if it
    /// cannot reach this.
    pub girth_floor: usize,
}

impl Default for PlantedParams {
    fn default() -> Self {
        PlantedParams {
            d: 3,
            ratio: 20,
            size: 0,
            girth_floor: 5,
        }
    }
}

/// Planted instance for one lemma's hypotheses at relaxed constants.
///
/// Kinds: `unbalanced`, `largesub`, `connectedgood`, `case1`, `case2`,
/// `maxdegree`. The manifest is re-verified at generation time and
/// generation fails if any check fails.
pub fn gen_planted(kind: &str, params: &PlantedParams, rng: &RandomSource) -> Result<PlantedInstance> {
    match kind {
        "unbalanced" => planted_unbalanced(params),
        "largesub" => planted_largesub(params, rng),
        "connectedgood" => planted_connectedgood(params, rng),
        "case1" => planted_case1(params),
        "case2" => planted_case2(params, rng),
        "maxdegree" => planted_maxdegree(params, rng),
        other => Err(Error::UnknownName(format!("planted kind `{other}`"))),
    }
}

/// Pattern-complete bipartite-with-connectors instance for the unbalanced
/// lemma: an independent hub set `B` and one degree-2 connector in `A` per
/// hub pair. Girth comes out 6 and the ratio |A|/|B| = (m-1)/2.
fn planted_unbalanced(params: &PlantedParams) -> Result<PlantedInstance> {
    let d = params.d;
    if params.girth_floor > 6 {
        return Err(Error::ConstructionFailed(format!(
            "unbalanced construction delivers girth 6, below requested floor {}",
            params.girth_floor
        )));
    }
    // (m-1)/2 >= ratio makes |A| = C(m,2) >= ratio * m.
    let m = 2 * params.ratio + 1;
    let mut edges = Vec::new();
    let mut a = VertexSet::new();
    let b: VertexSet = (0..m).collect();
    let mut next = m;
    for x in 0..m {
        for y in (x + 1)..m {
            edges.push((next, x));
            edges.push((next, y));
            a.insert(next);
            next += 1;
        }
    }
    let graph = Graph::from_edges(next, &edges)?;
    let mut manifest = Vec::new();
    let ratio_ok = a.len() >= params.ratio * b.len();
    manifest.push(ManifestCheck {
        name: "ratio".into(),
        pass: ratio_ok,
        details: format!("|A|={} |B|={} ratio target {}", a.len(), b.len(), params.ratio),
    });
    let ord = crate::graph::degeneracy_ordering(&graph);
    manifest.push(ManifestCheck {
        name: "degenerate".into(),
        pass: ord.degeneracy <= 2 * d,
        details: format!("degeneracy {} <= 2d = {}", ord.degeneracy, 2 * d),
    });
    let g = girth(&graph);
    manifest.push(ManifestCheck {
        name: "girth".into(),
        pass: g.is_none_or(|x| x >= 5),
        details: format!("girth {:?}", g),
    });
    let deg_ok = a.iter().all(|&x| {
        graph
            .neighbors(x)
            .iter()
            .filter(|w| b.contains(w))
            .count()
            >= 2
    });
    manifest.push(ManifestCheck {
        name: "a_degree_into_b".into(),
        pass: deg_ok,
        details: "every A vertex sends >= 2 edges to B".into(),
    });
    let mut roles = BTreeMap::new();
    roles.insert("a".to_string(), a);
    roles.insert("b".to_string(), b);
    PlantedInstance {
        graph,
        roles,
        manifest,
    }
    .ensure_all_pass()
}

/// Steiner triple system on `3s` points (Bose construction, `s` odd).
/// Triples pairwise share at most one point and every point lies in
/// `(3s-1)/2` triples.
fn bose_triples(s: usize) -> Vec<[usize; 3]> {
    assert!(s % 2 == 1, "Bose construction needs odd s");
    let point = |i: usize, k: usize| -> usize { k * s + i };
    let mut triples = Vec::new();
    for i in 0..s {
        triples.push([point(i, 0), point(i, 1), point(i, 2)]);
    }
    let half = s.div_ceil(2); // inverse of 2 mod s
    for k in 0..3 {
        for i in 0..s {
            for j in (i + 1)..s {
                let mid = ((i + j) * half) % s;
                triples.push([point(i, k), point(j, k), point(mid, (k + 1) % 3)]);
            }
        }
    }
    triples
}

/// Shared skeleton of the `case1` and `largesub` instances: hubs indexed by
/// a Steiner triple system, one "pair vertex" (y) per triple, and spokes
/// that connect each y to its three hubs, every spoke serving exactly two
/// ys at the same hub.
struct TripleSkeleton {
    graph: Graph,
    hubs: VertexSet,
    spokes: VertexSet,
    ys: VertexSet,
}

fn build_triple_skeleton(m: usize) -> Result<TripleSkeleton> {
    if !m.is_multiple_of(3) || (m / 3).is_multiple_of(2) {
        return Err(Error::InvalidInput(format!(
            "hub count must be 3*s with s odd, got {m}"
        )));
    }
    if !(m - 1).is_multiple_of(2) {
        return Err(Error::InvalidInput("hub count must be odd".into()));
    }
    let s = m / 3;
    let mut triples = bose_triples(s);
    // Every point lies in (m-1)/2 triples; when that is odd, drop the s
    // "vertical" triples (each point sits in exactly one) so hubs can pair
    // their slots into spokes.
    if (m - 1) / 2 % 2 == 1 {
        triples.drain(0..s);
    }
    let t = triples.len();
    // Vertex layout: ys first (their low ids give them priority in the
    // pipeline's greedy neighborhood-disjoint filter), then hubs, then
    // spokes.
    let hub_base = t;
    let spoke_base = t + m;
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (yi, tri) in triples.iter().enumerate() {
        for &h in tri {
            incident[h].push(yi);
        }
    }
    let mut edges = Vec::new();
    let mut next_spoke = spoke_base;
    for h in 0..m {
        let slots = &incident[h];
        if !slots.len().is_multiple_of(2) {
            return Err(Error::ConstructionFailed(format!(
                "hub {h} has odd slot count {}",
                slots.len()
            )));
        }
        for pair in slots.chunks(2) {
            let spoke = next_spoke;
            next_spoke += 1;
            edges.push((spoke, hub_base + h));
            edges.push((spoke, pair[0]));
            edges.push((spoke, pair[1]));
        }
    }
    let graph = Graph::from_edges(next_spoke, &edges)?;
    Ok(TripleSkeleton {
        graph,
        hubs: (hub_base..spoke_base).collect(),
        spokes: (spoke_base..next_spoke).collect(),
        ys: (0..t).collect(),
    })
}

/// Case 1 instance for the main theorem: hubs form the high-degree set B,
/// spokes form A' (exactly one hub edge each), and each Steiner triple
/// contributes a candidate good vertex adjacent to three spokes.
fn planted_case1(params: &PlantedParams) -> Result<PlantedInstance> {
    let d = params.d;
    let m = if params.size == 0 { 129 } else { params.size };
    let skel = build_triple_skeleton(m)?;
    let graph = skel.graph;
    let n = graph.n();
    let mut manifest = Vec::new();
    manifest.push(ManifestCheck {
        name: "min_degree".into(),
        pass: graph.min_degree() >= d,
        details: format!("delta {} >= d {}", graph.min_degree(), d),
    });
    let g = girth(&graph);
    manifest.push(ManifestCheck {
        name: "girth".into(),
        pass: g.is_none_or(|x| x >= params.girth_floor.max(5)),
        details: format!("girth {:?} floor {}", g, params.girth_floor.max(5)),
    });
    let a_prime_size = skel.spokes.len();
    manifest.push(ManifestCheck {
        name: "case1_dispatch".into(),
        pass: 2 * a_prime_size >= n,
        details: format!("|A'| = {} vs n/2 = {}", a_prime_size, n / 2),
    });
    let hub_deg_ok = skel.hubs.iter().all(|&h| graph.degree(h) >= d * d * d);
    manifest.push(ManifestCheck {
        name: "hub_degrees".into(),
        pass: hub_deg_ok,
        details: format!("every hub degree >= d^3 = {}", d * d * d),
    });
    let mut roles = BTreeMap::new();
    roles.insert("b".to_string(), skel.hubs);
    roles.insert("a_prime".to_string(), skel.spokes);
    roles.insert("y_pool".to_string(), skel.ys);
    PlantedInstance {
        graph,
        roles,
        manifest,
    }
    .ensure_all_pass()
}

/// Standalone instance for the large-subset lemma: the triple skeleton with
/// hubs demoted to ordinary vertices; `x` is the spoke set.
fn planted_largesub(params: &PlantedParams, _rng: &RandomSource) -> Result<PlantedInstance> {
    let m = if params.size == 0 { 39 } else { params.size };
    let skel = build_triple_skeleton(m)?;
    let graph = skel.graph;
    let n = graph.n();
    let d = params.d;
    let mut manifest = Vec::new();
    manifest.push(ManifestCheck {
        name: "x_half".into(),
        pass: 2 * skel.spokes.len() >= n,
        details: format!("|X| = {} vs n/2 = {}", skel.spokes.len(), n / 2),
    });
    let deg_ok = skel.spokes.iter().all(|&v| graph.degree(v) >= d);
    manifest.push(ManifestCheck {
        name: "x_degrees".into(),
        pass: deg_ok,
        details: format!("every X vertex has degree >= {d}"),
    });
    let ord = crate::graph::degeneracy_ordering(&graph);
    manifest.push(ManifestCheck {
        name: "degenerate".into(),
        pass: ord.degeneracy <= 2 * d,
        details: format!("degeneracy {} <= {}", ord.degeneracy, 2 * d),
    });
    let g = girth(&graph);
    manifest.push(ManifestCheck {
        name: "girth".into(),
        pass: g.is_none_or(|x| x >= 5),
        details: format!("girth {:?}", g),
    });
    let mut roles = BTreeMap::new();
    roles.insert("x".to_string(), skel.spokes);
    roles.insert("y_pool".to_string(), skel.ys);
    roles.insert("hubs".to_string(), skel.hubs);
    PlantedInstance {
        graph,
        roles,
        manifest,
    }
    .ensure_all_pass()
}

/// Dense 4-regular block(s) carrying the tracked set `b`, a sparse
/// 3-regular periphery, and a cycle blob, both hung off the anchor block
/// through pairwise non-adjacent attachment vertices (adjacent attachments
/// would close 4-cycles). The decoy variant adds a larger b-free block that
/// the extraction must discard first, cascading the periphery into the
/// degree peel.
fn planted_connectedgood(params: &PlantedParams, rng: &RandomSource) -> Result<PlantedInstance> {
    let d = params.d;
    let two_blocks = params.size % 3 == 2;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut next = 0usize;

    let block = |next: &mut usize, edges: &mut Vec<(usize, usize)>, nb: usize, idx: u64| -> Result<(usize, Graph)> {
        let g = gen_regular_high_girth(nb, 4, 5, &RandomSource::new(rng.seed ^ (idx << 32)), 60)
            .map_err(|e| Error::ConstructionFailed(format!("block generation failed: {e}")))?;
        let base = *next;
        for (u, v) in g.edges() {
            edges.push((base + u, base + v));
        }
        *next += nb;
        Ok((base, g))
    };

    let (decoy_base, decoy_graph) = if two_blocks {
        let (b, g) = block(&mut next, &mut edges, 64, 1)?;
        (b, Some(g))
    } else {
        (0, None)
    };
    let (carrier_base, carrier_graph) = block(&mut next, &mut edges, 50, 2)?;
    let carrier_n = carrier_graph.n();

    // Attachment slots: pairwise non-adjacent vertices of the anchor block.
    let (anchor_base, anchor_graph) = if let Some(g) = &decoy_graph {
        (decoy_base, g)
    } else {
        (carrier_base, &carrier_graph)
    };
    let mut slots: Vec<usize> = Vec::new();
    for v in anchor_graph.vertices() {
        if slots
            .iter()
            .all(|&u| u != v && !anchor_graph.has_edge(u, v))
        {
            slots.push(v);
            if slots.len() == 9 {
                break;
            }
        }
    }
    if slots.len() < 9 {
        return Err(Error::ConstructionFailed(
            "anchor block too small for independent attachment slots".into(),
        ));
    }
    let slot = |i: usize| anchor_base + slots[i];

    // Sparse periphery, attached through four vertices; when the anchor
    // block disappears the periphery loses those edges and the degree peel
    // dissolves it entirely.
    let peri_n = 20;
    let peri = gen_regular_high_girth(peri_n, 3, 5, &RandomSource::new(rng.seed ^ 0xa5a5), 60)
        .map_err(|e| Error::ConstructionFailed(format!("periphery generation failed: {e}")))?;
    let peri_base = next;
    for (u, v) in peri.edges() {
        edges.push((peri_base + u, peri_base + v));
    }
    next += peri_n;
    for i in 0..4 {
        edges.push((peri_base + 5 * i, slot(i)));
    }

    // A 12-cycle blob: every blob vertex keeps one edge into the anchor
    // block, so it survives splitting but peels once the anchor goes.
    let blob_len = 12;
    let blob_base = next;
    for i in 0..blob_len {
        edges.push((blob_base + i, blob_base + (i + 1) % blob_len));
        edges.push((blob_base + i, slot(4 + (i % 4))));
    }
    next += blob_len;

    // The carrier hangs off the decoy by a single edge.
    if two_blocks {
        edges.push((slot(8), carrier_base));
    }

    let graph = Graph::from_edges(next, &edges)?;
    let b: VertexSet = (carrier_base..carrier_base + carrier_n).collect();

    let mut manifest = Vec::new();
    manifest.push(ManifestCheck {
        name: "delta".into(),
        pass: graph.min_degree() >= d,
        details: format!("delta {} >= {}", graph.min_degree(), d),
    });
    let g = girth(&graph);
    manifest.push(ManifestCheck {
        name: "girth".into(),
        pass: g.is_none_or(|x| x >= 5),
        details: format!("girth {:?}", g),
    });
    manifest.push(ManifestCheck {
        name: "b_size".into(),
        pass: b.len() * d * d * d >= graph.n(),
        details: format!("|b| = {} vs n/d^3 = {}", b.len(), graph.n() / (d * d * d)),
    });
    let mut roles = BTreeMap::new();
    roles.insert("b".to_string(), b);
    roles.insert(
        "carrier".to_string(),
        (carrier_base..carrier_base + carrier_n).collect(),
    );
    PlantedInstance {
        graph,
        roles,
        manifest,
    }
    .ensure_all_pass()
}

/// Ball-and-path skeleton for the max-degree lemma: centers with three
/// branching arms (radius 4 trees), one leaf-to-leaf bridge per pattern
/// edge, pattern drawn as a random regular graph on the centers.
pub struct SkeletonShape {
    pub centers: usize,
    pub pattern_degree: usize,
}

fn planted_maxdegree(params: &PlantedParams, rng: &RandomSource) -> Result<PlantedInstance> {
    let centers = if params.size == 0 { 450 } else { params.size };
    build_skeleton(
        SkeletonShape {
            centers,
            pattern_degree: 12,
        },
        params,
        rng,
        false,
    )
}

/// Case 2 instance: the max-degree skeleton plus one high-degree hub
/// reached through long tentacle paths, so B = {hub}, A is empty and the
/// dispatcher lands in the peel branch.
fn planted_case2(params: &PlantedParams, rng: &RandomSource) -> Result<PlantedInstance> {
    let centers = if params.size == 0 { 450 } else { params.size };
    build_skeleton(
        SkeletonShape {
            centers,
            pattern_degree: 12,
        },
        params,
        rng,
        true,
    )
}

/// Arm tree: a root at depth 1 under the center and four disjoint chains
/// of length 3 below it, so leaves sit at depth 4 and two leaves of the
/// same tree are at distance at least 6. Bridges join leaves of distinct
/// centers through one bridge vertex, putting pattern-adjacent centers at
/// distance exactly 10 and making every host cycle at least
/// `(6 + 2) * pattern-girth >= 24` long.
fn build_skeleton(
    shape: SkeletonShape,
    params: &PlantedParams,
    rng: &RandomSource,
    with_hub: bool,
) -> Result<PlantedInstance> {
    let d = params.d;
    let mc = shape.centers;
    let deg = shape.pattern_degree;
    const CHAINS_PER_ARM: usize = 4;
    const CHAIN_LEN: usize = 3;
    let arm_nodes = 1 + CHAINS_PER_ARM * CHAIN_LEN; // root + chains
    if !deg.is_multiple_of(3) || deg / 3 > CHAINS_PER_ARM {
        return Err(Error::InvalidInput(format!(
            "pattern degree must be a multiple of 3, at most {}",
            3 * CHAINS_PER_ARM
        )));
    }
    if !(mc * deg).is_multiple_of(2) {
        return Err(Error::InvalidInput("centers * pattern degree must be even".into()));
    }
    // Pattern over centers; even pattern triangles stay above the host
    // girth floor thanks to the intra-tree leaf separation.
    let pattern = gen_regular_high_girth(mc, deg, 3, rng, 60)
        .map_err(|e| Error::ConstructionFailed(format!("pattern generation failed: {e}")))?;

    // Ids are laid out centers-first so the decomposition's lowest-id
    // greedy center pick takes exactly the true centers.
    let tree_size = 1 + 3 * arm_nodes;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let arm_vertex = |c: usize, arm: usize, node: usize| -> usize {
        mc + c * (tree_size - 1) + arm * arm_nodes + node
    };
    for c in 0..mc {
        for arm in 0..3 {
            // Root under the center.
            edges.push((c, arm_vertex(c, arm, 0)));
            for chain in 0..CHAINS_PER_ARM {
                let base = 1 + chain * CHAIN_LEN;
                edges.push((arm_vertex(c, arm, 0), arm_vertex(c, arm, base)));
                for step in 1..CHAIN_LEN {
                    edges.push((
                        arm_vertex(c, arm, base + step - 1),
                        arm_vertex(c, arm, base + step),
                    ));
                }
            }
        }
    }
    let mut next = mc + mc * (tree_size - 1);
    // Leaf of chain k within its arm.
    let leaf_offset = |chain: usize| 1 + chain * CHAIN_LEN + (CHAIN_LEN - 1);

    // Bridges: hand out leaf slots arm-by-arm per center.
    let mut slot_cursor: Vec<usize> = vec![0; mc];
    let leaf_of = |c: usize, cursor: &mut Vec<usize>| -> Result<usize> {
        let k = cursor[c];
        cursor[c] += 1;
        if k >= 3 * CHAINS_PER_ARM {
            return Err(Error::ConstructionFailed(format!(
                "center {c} ran out of leaf slots"
            )));
        }
        Ok(arm_vertex(c, k % 3, leaf_offset(k / 3)))
    };
    for (u, v) in pattern.edges() {
        let lu = leaf_of(u, &mut slot_cursor)?;
        let lv = leaf_of(v, &mut slot_cursor)?;
        let bridge = next;
        next += 1;
        edges.push((lu, bridge));
        edges.push((bridge, lv));
    }

    let mut roles = BTreeMap::new();
    let centers_set: VertexSet = (0..mc).collect();

    if with_hub {
        // One hub of degree d^3, each edge reaching the skeleton through a
        // tentacle path of length 8 ending at an arm root. Any cycle
        // through the hub runs down two tentacles and between two distinct
        // roots, so its length is at least 8 + 8 + 2 + 2.
        let want = d * d * d;
        let roots_needed = want;
        if mc * 3 < roots_needed {
            return Err(Error::ConstructionFailed(
                "not enough arm roots for hub tentacles".into(),
            ));
        }
        const TENTACLE: usize = 8;
        let hub = next;
        next += 1;
        for k in 0..want {
            let root = arm_vertex(k / 3, k % 3, 0);
            let mut prev = root;
            for _ in 0..TENTACLE {
                let t = next;
                next += 1;
                edges.push((prev, t));
                prev = t;
            }
            edges.push((prev, hub));
        }
        roles.insert("hub".to_string(), VertexSet::from([hub]));
    }

    let graph = Graph::from_edges(next, &edges)?;
    let n = graph.n();
    let u_set: VertexSet = graph.vertices().filter(|&v| graph.degree(v) >= d).collect();

    let mut manifest = Vec::new();
    manifest.push(ManifestCheck {
        name: "u_fraction".into(),
        pass: u_set.len() * 20 >= n,
        details: format!("|U| = {} vs n/20 = {}", u_set.len(), n / 20),
    });
    let g = girth(&graph);
    let girth_need = params.girth_floor.max(20);
    manifest.push(ManifestCheck {
        name: "girth".into(),
        pass: g.is_none_or(|x| x >= girth_need),
        details: format!("girth {:?} floor {}", g, girth_need),
    });
    manifest.push(ManifestCheck {
        name: "max_degree".into(),
        pass: graph.max_degree() <= d.pow(3).max(deg),
        details: format!("Delta {}", graph.max_degree()),
    });
    manifest.push(ManifestCheck {
        name: "center_separation".into(),
        pass: {
            // Adjacent pattern centers must be at distance exactly 10.
            let (u, v) = pattern.edges()[0];
            crate::graph::distance(&graph, u, v)?.unwrap_or(0) == 10
        },
        details: "pattern-adjacent centers at host distance 10".into(),
    });
    roles.insert("centers".to_string(), centers_set);
    roles.insert("u".to_string(), u_set);
    PlantedInstance {
        graph,
        roles,
        manifest,
    }
    .ensure_all_pass()
}
