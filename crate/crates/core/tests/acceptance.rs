//! Acceptance suite: one test per criterion, each printing a pass line
//! with its runtime. Randomized criteria run from fixed seeds and the
//! determinism criterion re-runs them, comparing artifacts byte for byte.

use std::collections::BTreeSet;
use std::time::Instant;

use indsub::certify::{
    brute_force_induced, verify_induced_subdivision, SubdivisionCertificate,
};
use indsub::connectivity::{connected_good, is_k_connected, vertex_connectivity};
use indsub::generators::{gen_named, gen_planted, PlantedParams};
use indsub::graph::{degeneracy_ordering, girth, induced_subgraph, Graph};
use indsub::pipeline::{
    ball_decomposition, branchable_set, build_structure, lemma_unbalanced, sparsify_structure,
    theorem_main, PipelineReport,
};
use indsub::probabilistic::{lll_resample, sat_event_system, LllOutcome};
use indsub::{ConstantsProfile, RandomSource, VertexSet};

fn pass(criterion: &str, detail: String, started: Instant) {
    println!(
        "criterion {criterion}: PASS ({detail}; {:.1}s)",
        started.elapsed().as_secs_f64()
    );
}

// ---------------------------------------------------------------- helpers

/// Seeded G(n, p) with dense labels.
fn random_graph(n: usize, p: f64, rng: &RandomSource, index: u64) -> Graph {
    let mut stream = rng.stream("gnp", index);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if stream.bernoulli(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Independent exact search for an induced K4 subdivision: adjacency-matrix
/// based, recursing over branch quadruples and per-pair path extension with
/// fresh pruning logic. Shares no code with the library search.
mod reference {
    pub struct Ref {
        pub n: usize,
        pub adj: Vec<Vec<bool>>,
    }

    impl Ref {
        pub fn new(g: &indsub::Graph) -> Ref {
            let n = g.n();
            let mut adj = vec![vec![false; n]; n];
            for (u, v) in g.edges() {
                adj[u][v] = true;
                adj[v][u] = true;
            }
            Ref { n, adj }
        }

        pub fn has_induced_k4_subdivision(&self) -> bool {
            let n = self.n;
            let mut quad = [0usize; 4];
            self.pick(0, 0, &mut quad, n)
        }

        fn pick(&self, slot: usize, from: usize, quad: &mut [usize; 4], n: usize) -> bool {
            if slot == 4 {
                let mut used = vec![false; n];
                for &b in quad.iter() {
                    used[b] = true;
                }
                let mut paths: Vec<Vec<usize>> = Vec::new();
                return self.routes(quad, 0, &mut used, &mut paths);
            }
            for v in from..n {
                if self.adj[v].iter().filter(|&&x| x).count() < 3 {
                    continue;
                }
                quad[slot] = v;
                if self.pick(slot + 1, v + 1, quad, n) {
                    return true;
                }
            }
            false
        }

        const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

        fn routes(
            &self,
            quad: &[usize; 4],
            k: usize,
            used: &mut [bool],
            paths: &mut Vec<Vec<usize>>,
        ) -> bool {
            if k == 6 {
                return self.union_is_induced(quad, paths);
            }
            let (a, b) = (quad[Self::PAIRS[k].0], quad[Self::PAIRS[k].1]);
            let mut walk = vec![a];
            self.extend(quad, k, used, paths, &mut walk, b)
        }

        fn extend(
            &self,
            quad: &[usize; 4],
            k: usize,
            used: &mut [bool],
            paths: &mut Vec<Vec<usize>>,
            walk: &mut Vec<usize>,
            target: usize,
        ) -> bool {
            let cur = *walk.last().unwrap();
            for next in 0..self.n {
                if !self.adj[cur][next] {
                    continue;
                }
                if next == target {
                    // Adjacent branch pairs only admit the direct edge.
                    if walk.len() > 1 && self.adj[walk[0]][target] {
                        continue;
                    }
                    let mut full = walk.clone();
                    full.push(target);
                    for &v in &full[1..full.len() - 1] {
                        used[v] = true;
                    }
                    paths.push(full.clone());
                    if self.routes(quad, k + 1, used, paths) {
                        return true;
                    }
                    paths.pop();
                    for &v in &full[1..full.len() - 1] {
                        used[v] = false;
                    }
                    continue;
                }
                if used[next] || walk.contains(&next) || quad.contains(&next) {
                    continue;
                }
                // Interior vertices touch nothing previously placed except
                // the walk tip; branch adjacency only at the walk ends.
                if quad
                    .iter()
                    .any(|&b| b != walk[0] && b != target && self.adj[next][b])
                {
                    continue;
                }
                if self.adj[next][walk[0]] && walk.len() > 1 {
                    continue;
                }
                if walk[..walk.len() - 1]
                    .iter()
                    .any(|&v| v != walk[0] && self.adj[next][v])
                {
                    continue;
                }
                if paths
                    .iter()
                    .any(|p| p[1..p.len() - 1].iter().any(|&v| self.adj[next][v]))
                {
                    continue;
                }
                walk.push(next);
                if self.extend(quad, k, used, paths, walk, target) {
                    return true;
                }
                walk.pop();
            }
            false
        }

        fn union_is_induced(&self, quad: &[usize; 4], paths: &[Vec<usize>]) -> bool {
            let mut members: Vec<usize> = quad.to_vec();
            for p in paths {
                members.extend(p.iter().copied());
            }
            members.sort_unstable();
            members.dedup();
            let mut allowed = vec![vec![false; self.n]; self.n];
            for p in paths {
                for w in p.windows(2) {
                    allowed[w[0]][w[1]] = true;
                    allowed[w[1]][w[0]] = true;
                }
            }
            for (i, &u) in members.iter().enumerate() {
                for &v in &members[i + 1..] {
                    if self.adj[u][v] && !allowed[u][v] {
                        return false;
                    }
                }
            }
            true
        }
    }
}

/// Connected graphs on `n <= 8` vertices up to isomorphism, generated by
/// vertex augmentation with color-refinement canonical forms.
mod enumerate {
    use std::collections::BTreeSet;

    /// Graph as an edge bitmask over pairs (i < j) for fixed n.
    fn bit(n: usize, i: usize, j: usize) -> u32 {
        let (i, j) = (i.min(j), i.max(j));
        let mut idx = 0;
        for a in 0..i {
            idx += n - a - 1;
        }
        idx += j - i - 1;
        1u32 << idx
    }

    fn degrees(n: usize, mask: u32) -> Vec<usize> {
        let mut deg = vec![0usize; n];
        for i in 0..n {
            for j in (i + 1)..n {
                if mask & bit(n, i, j) != 0 {
                    deg[i] += 1;
                    deg[j] += 1;
                }
            }
        }
        deg
    }

    /// Color refinement: iterate (color, sorted neighbor colors) until
    /// stable; colors are re-indexed by sorted key so they are invariant
    /// under isomorphism.
    fn refine(n: usize, mask: u32) -> Vec<usize> {
        let mut color = degrees(n, mask);
        loop {
            let mut keys: Vec<(usize, Vec<usize>)> = Vec::with_capacity(n);
            for i in 0..n {
                let mut nb: Vec<usize> = (0..n)
                    .filter(|&j| j != i && mask & bit(n, i, j) != 0)
                    .map(|j| color[j])
                    .collect();
                nb.sort_unstable();
                keys.push((color[i], nb));
            }
            let mut uniq: Vec<&(usize, Vec<usize>)> = keys.iter().collect();
            uniq.sort();
            uniq.dedup();
            let next: Vec<usize> = keys
                .iter()
                .map(|k| uniq.binary_search(&k).unwrap())
                .collect();
            if next == color {
                return color;
            }
            color = next;
        }
    }

    /// Minimum edge mask over all color-respecting relabelings.
    fn canonical(n: usize, mask: u32) -> u32 {
        let color = refine(n, mask);
        // Positions grouped by color: position blocks ordered by color.
        let mut verts: Vec<usize> = (0..n).collect();
        verts.sort_by_key(|&v| (color[v], v));
        let mut best = u32::MAX;
        let mut perm = vec![usize::MAX; n]; // vertex -> position
        let mut used = vec![false; n];
        fn place(
            pos: usize,
            n: usize,
            mask: u32,
            verts: &[usize],
            color: &[usize],
            perm: &mut [usize],
            used: &mut [bool],
            best: &mut u32,
        ) {
            if pos == n {
                let mut out = 0u32;
                for i in 0..n {
                    for j in (i + 1)..n {
                        if mask & bit(n, i, j) != 0 {
                            out |= bit(n, perm[i], perm[j]);
                        }
                    }
                }
                if out < *best {
                    *best = out;
                }
                return;
            }
            // Position `pos` hosts any unused vertex of the same color
            // class as the pos-th sorted vertex.
            let want = color[verts[pos]];
            for &v in verts {
                if !used[v] && color[v] == want {
                    used[v] = true;
                    perm[v] = pos;
                    place(pos + 1, n, mask, verts, color, perm, used, best);
                    used[v] = false;
                    perm[v] = usize::MAX;
                }
            }
        }
        place(0, n, mask, &verts, &color, &mut perm, &mut used, &mut best);
        best
    }

    /// All graphs on exactly `n` vertices up to isomorphism (as canonical
    /// masks), grown one vertex at a time.
    pub fn all_graphs(n: usize) -> Vec<u32> {
        let mut level: BTreeSet<u32> = BTreeSet::from([0u32]); // single vertex
        for k in 1..n {
            let mut next: BTreeSet<u32> = BTreeSet::new();
            for &g in &level {
                // New vertex k adjacent to any subset of 0..k.
                for nbhd in 0u32..(1 << k) {
                    let mut mask = remap(k, g, k + 1);
                    for j in 0..k {
                        if nbhd & (1 << j) != 0 {
                            mask |= bit(k + 1, j, k);
                        }
                    }
                    next.insert(canonical(k + 1, mask));
                }
            }
            level = next;
        }
        level.into_iter().collect()
    }

    /// Reinterpret a mask on `n_old` vertices as one on `n_new >= n_old`.
    fn remap(n_old: usize, mask: u32, n_new: usize) -> u32 {
        let mut out = 0u32;
        for i in 0..n_old {
            for j in (i + 1)..n_old {
                if mask & bit(n_old, i, j) != 0 {
                    out |= bit(n_new, i, j);
                }
            }
        }
        out
    }

    pub fn to_graph(n: usize, mask: u32) -> indsub::Graph {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if mask & bit(n, i, j) != 0 {
                    edges.push((i, j));
                }
            }
        }
        indsub::Graph::from_edges(n, &edges).unwrap()
    }
}

// -------------------------------------------------------------- criteria

/// Criterion 1: the budgeted exact search agrees with an independent
/// recursive enumerator on every connected graph with up to 8 vertices
/// (up to isomorphism) and on 500 seeded random graphs with up to 9.
#[test]
fn criterion_1_oracle_equivalence_certificates() {
    let started = Instant::now();
    fn check(g: &Graph, positives: &mut usize) {
        let reference = reference::Ref::new(g).has_induced_k4_subdivision();
        let found = brute_force_induced(g, 4, 20_000_000).unwrap();
        assert_eq!(
            found.is_some(),
            reference,
            "disagreement on n={} m={} edges={:?}",
            g.n(),
            g.m(),
            g.edges()
        );
        if let Some(cert) = found {
            assert!(verify_induced_subdivision(g, &cert).valid_induced);
            *positives += 1;
        }
    }
    let mut positives = 0usize;
    let mut exhaustive = 0usize;
    for n in 2..=8usize {
        for mask in enumerate::all_graphs(n) {
            let g = enumerate::to_graph(n, mask);
            if g.is_connected() {
                check(&g, &mut positives);
                exhaustive += 1;
            }
        }
    }
    let rng = RandomSource::new(20_260_101);
    for i in 0..500u64 {
        let mut stream = rng.stream("sizes", i);
        let n = 4 + (stream.next_below(6) as usize); // 4..=9
        let p = 0.25 + 0.1 * (stream.next_below(5) as f64);
        let g = random_graph(n, p, &rng, i);
        check(&g, &mut positives);
    }
    pass(
        "1 (oracle equivalence)",
        format!("{exhaustive} exhaustive + 500 random graphs, {positives} positives verified"),
        started,
    );
}

/// Criterion 2: girth, degeneracy, and vertex connectivity match
/// brute-force oracles on the named corpus and 200 seeded random graphs.
#[test]
fn criterion_2_structural_primitives() {
    let started = Instant::now();
    // Oracles sharing no code with the library implementations.
    let girth_oracle = |g: &Graph| -> Option<usize> {
        let mut best = usize::MAX;
        for (u, v) in g.edges() {
            let mut edges = g.edges();
            edges.retain(|&e| e != (u, v));
            let h = Graph::from_edges(g.n(), &edges).unwrap();
            let d = h.bfs_distances(u)[v];
            if d != usize::MAX {
                best = best.min(d + 1);
            }
        }
        (best != usize::MAX).then_some(best)
    };
    let degeneracy_oracle = |g: &Graph| -> usize {
        let n = g.n();
        let mut best = 0usize;
        for mask in 1u32..(1 << n) {
            let mut min_deg = usize::MAX;
            for v in 0..n {
                if mask & (1 << v) == 0 {
                    continue;
                }
                let deg = g
                    .neighbors(v)
                    .iter()
                    .filter(|&&w| mask & (1 << w) != 0)
                    .count();
                min_deg = min_deg.min(deg);
            }
            best = best.max(min_deg);
        }
        best
    };
    let connectivity_oracle = |g: &Graph| -> usize {
        let n = g.n();
        if g.is_complete() {
            return n.saturating_sub(1);
        }
        let connected = |mask: u32| -> bool {
            let verts: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
            if verts.len() <= 1 {
                return true;
            }
            let mut seen = 1u32 << verts[0];
            let mut stack = vec![verts[0]];
            while let Some(u) = stack.pop() {
                for &w in g.neighbors(u) {
                    if mask & (1 << w) != 0 && seen & (1 << w) == 0 {
                        seen |= 1 << w;
                        stack.push(w);
                    }
                }
            }
            verts.iter().all(|&v| seen & (1 << v) != 0)
        };
        let full = (1u32 << n) - 1;
        (0..=n)
            .find(|&size| {
                // Some removal set of this size disconnects.
                (0u32..(1 << n)).any(|rm| {
                    rm.count_ones() as usize == size
                        && (full ^ rm).count_ones() >= 2
                        && !connected(full ^ rm)
                })
            })
            .unwrap_or(n)
    };

    for (name, want) in [("petersen", (5, 3, 3)), ("heawood", (6, 3, 3)), ("k5", (3, 4, 4))] {
        let g = gen_named(name).unwrap();
        assert_eq!(girth(&g), Some(want.0), "{name} girth");
        assert_eq!(degeneracy_ordering(&g).degeneracy, want.1, "{name} degeneracy");
        assert_eq!(vertex_connectivity(&g), want.2, "{name} connectivity");
    }
    let rng = RandomSource::new(77_111);
    for i in 0..200u64 {
        let mut s = rng.stream("c2", i);
        let n = 4 + (s.next_below(9) as usize); // 4..=12
        let p = 0.15 + 0.1 * (s.next_below(7) as f64);
        let g = random_graph(n, p, &rng, 5_000 + i);
        assert_eq!(girth(&g), girth_oracle(&g), "girth on instance {i}");
        assert_eq!(
            degeneracy_ordering(&g).degeneracy,
            degeneracy_oracle(&g),
            "degeneracy on instance {i}"
        );
        assert_eq!(
            vertex_connectivity(&g),
            connectivity_oracle(&g),
            "connectivity on instance {i}"
        );
    }
    pass(
        "2 (structural primitives)",
        "named corpus + 200 random graphs, exact".into(),
        started,
    );
}

/// One unbalanced-lemma run; returns (success, certificate text).
fn run_unbalanced(seed: u64) -> (bool, String) {
    let rng = RandomSource::new(seed);
    let params = PlantedParams {
        ratio: 20 + (seed % 6) as usize,
        ..Default::default()
    };
    let inst = gen_planted("unbalanced", &params, &rng).unwrap();
    let profile = ConstantsProfile::desk();
    let mut report = PipelineReport::new();
    match lemma_unbalanced(
        &inst.graph,
        inst.role("a").unwrap(),
        inst.role("b").unwrap(),
        3,
        &profile,
        &rng,
        &mut report,
    ) {
        Ok(cert) => {
            assert!(verify_induced_subdivision(&inst.graph, &cert).valid_induced);
            assert_eq!(cert.order(), 4);
            // The density gate must be mentioned as holding in the
            // accepted trial (re-derive it from the report line).
            assert!(report.mentions("auxiliary graph"));
            (true, cert.to_text() + &report.text())
        }
        Err(indsub::Error::TrialsExhausted(_)) => (false, String::new()),
        Err(e) => panic!("seed {seed}: unexpected failure {e}"),
    }
}

/// Criterion 3: the unbalanced lemma end-to-end on 50 planted instances,
/// at least 45 producing verified induced K4 certificates within the
/// trial budget, with the density gate holding in every accepted trial.
#[test]
fn criterion_3_unbalanced_end_to_end() {
    let started = Instant::now();
    let mut successes = 0usize;
    for seed in 0..50u64 {
        if run_unbalanced(3000 + seed).0 {
            successes += 1;
        }
    }
    assert!(
        successes >= 45,
        "only {successes}/50 runs produced certificates"
    );
    pass(
        "3 (unbalanced lemma)",
        format!("{successes}/50 verified induced K4 certificates"),
        started,
    );
}

/// One connected-good run; returns the serialized trace.
fn run_connectedgood(seed: u64) -> String {
    let rng = RandomSource::new(seed);
    let params = PlantedParams {
        size: (seed % 3) as usize,
        ..Default::default()
    };
    let inst = gen_planted("connectedgood", &params, &rng).unwrap();
    let profile = ConstantsProfile::desk();
    let g = &inst.graph;
    let out = connected_good(g, inst.role("b").unwrap(), 3, &profile).unwrap();
    // Postconditions, re-checked independently of the library's own
    // verification.
    let k = profile.cg_connectivity(3);
    let sub = induced_subgraph(g, &out.h_prime).unwrap();
    assert!(is_k_connected(&sub.graph, k), "connectivity (seed {seed})");
    assert!(out.h_prime.len() > k, "size bound (seed {seed})");
    let last = out.trace.rounds.last().unwrap();
    assert!(
        last.s.len() <= profile.cg_boundary_cap(3),
        "boundary bound (seed {seed})"
    );
    for &x in &out.preserved {
        for &w in g.neighbors(x) {
            assert!(out.h_prime.contains(&w), "degree preservation (seed {seed})");
        }
    }
    assert!(
        out.preserved.len() >= profile.cg_preserved_floor(out.h_prime.len(), 3),
        "preserved floor (seed {seed})"
    );
    assert!(
        out.trace.deletion_inequality_holds(g.max_degree()),
        "deletion inequality (seed {seed})"
    );
    out.trace.to_log()
}

/// Criterion 4: bounded-boundary extraction postconditions hold on 50
/// planted instances, including the cumulative deletion inequality.
#[test]
fn criterion_4_connected_good_postconditions() {
    let started = Instant::now();
    for seed in 0..50u64 {
        run_connectedgood(4000 + seed);
    }
    pass(
        "4 (connected-good postconditions)",
        "50 instances, all bounds exact".into(),
        started,
    );
}

/// One sparsification run over a fixed skeleton; returns a digest of the
/// structure for determinism comparison.
fn run_sparsify(skeleton_seed: u64, sample_seed: u64) -> String {
    let gen_rng = RandomSource::new(skeleton_seed);
    let params = PlantedParams {
        size: 60,
        ..Default::default()
    };
    let inst = gen_planted("maxdegree", &params, &gen_rng).unwrap();
    let profile = ConstantsProfile::desk();
    let bd = ball_decomposition(&inst.graph, inst.role("u").unwrap(), &profile).unwrap();
    let sg = build_structure(&inst.graph, &bd, &profile).unwrap();
    let rng = RandomSource::new(sample_seed);
    // Any violation inside would surface as an error; none may occur.
    let ps = sparsify_structure(&inst.graph, &sg, 3, &profile, &rng).unwrap();
    // Branchable witnesses re-checked from scratch.
    let witnesses = branchable_set(&ps, &inst.graph, 3);
    for w in &witnesses {
        let mut seen: VertexSet = VertexSet::new();
        let v_local = ps.local_of(w.center).unwrap();
        for &u in &w.witnesses {
            let u_local = ps.local_of(u).unwrap();
            let key = (v_local.min(u_local), v_local.max(u_local));
            let path = &ps.path_of[&key];
            for &x in path.iter().filter(|&&x| x != w.center) {
                assert!(seen.insert(x), "witness paths overlap at {x}");
            }
        }
        // No edges between distinct witness paths away from the center.
        let members: Vec<usize> = seen.iter().copied().collect();
        for &u in &w.witnesses {
            let u_local = ps.local_of(u).unwrap();
            let key = (v_local.min(u_local), v_local.max(u_local));
            let path: VertexSet = ps.path_of[&key]
                .iter()
                .copied()
                .filter(|&x| x != w.center)
                .collect();
            for &x in &members {
                if path.contains(&x) {
                    continue;
                }
                for &y in inst.graph.neighbors(x) {
                    assert!(
                        !path.contains(&y) || members.iter().all(|&m| m != x),
                        "cross edge between witness paths"
                    );
                }
            }
        }
    }
    format!(
        "s={} edges={} branchable={}\n",
        ps.s.len(),
        ps.aux.m(),
        witnesses.len()
    )
}

/// Criterion 5: 100 seeded sparsifications over planted skeletons with
/// zero structure violations and valid branchable witnesses.
#[test]
fn criterion_5_structure_invariants() {
    let started = Instant::now();
    for i in 0..100u64 {
        run_sparsify(500 + i / 20, 9_000 + i);
    }
    pass(
        "5 (structure invariants)",
        "100 sparsification runs, zero violations".into(),
        started,
    );
}

/// Random 3-SAT instance where each clause shares variables with at most
/// one other clause: clauses come in pairs overlapping in one variable.
fn lll_sat_instance(index: u64, rng: &RandomSource) -> (usize, Vec<Vec<(usize, bool)>>) {
    let mut stream = rng.stream("sat", index);
    let pairs = 12usize;
    let vars_per_pair = 5; // clause A: v0 v1 v2; clause B: v2 v3 v4
    let num_vars = pairs * vars_per_pair;
    let mut clauses = Vec::new();
    for p in 0..pairs {
        let base = p * vars_per_pair;
        let sign = |s: &mut indsub::rng::Stream| s.bernoulli(0.5);
        clauses.push(vec![
            (base, sign(&mut stream)),
            (base + 1, sign(&mut stream)),
            (base + 2, sign(&mut stream)),
        ]);
        clauses.push(vec![
            (base + 2, sign(&mut stream)),
            (base + 3, sign(&mut stream)),
            (base + 4, sign(&mut stream)),
        ]);
    }
    (num_vars, clauses)
}

fn run_lll(index: u64) -> String {
    let rng = RandomSource::new(6000 + index);
    let (num_vars, clauses) = lll_sat_instance(index, &rng);
    let sys = sat_event_system(num_vars, &clauses);
    match lll_resample(&sys, &rng, 10 * num_vars) {
        LllOutcome::Satisfied {
            assignment,
            resamples,
        } => {
            assert!(sys.first_violated(&assignment).is_none());
            assert!(resamples <= 10 * num_vars);
            format!(
                "{resamples} {}\n",
                assignment
                    .iter()
                    .map(|&b| if b { '1' } else { '0' })
                    .collect::<String>()
            )
        }
        LllOutcome::Exhausted { .. } => panic!("instance {index}: resampler exhausted"),
    }
}

/// Criterion 6: the resampler settles every sparse 3-SAT instance within
/// 10x the variable count.
#[test]
fn criterion_6_moser_tardos() {
    let started = Instant::now();
    for i in 0..100u64 {
        run_lll(i);
    }
    pass(
        "6 (Moser-Tardos)",
        "100 sparse 3-SAT instances within the resampling budget".into(),
        started,
    );
}

const CASE1_SEED: u64 = 4101;
const CASE2_SEED: u64 = 11;

fn run_main(kind: &str, seed: u64) -> (SubdivisionCertificate, String) {
    let rng = RandomSource::new(seed);
    let inst = gen_planted(kind, &PlantedParams::default(), &rng).unwrap();
    let mut report = PipelineReport::new();
    let cert = theorem_main(&inst.graph, 3, &ConstantsProfile::desk(), &rng, &mut report)
        .unwrap_or_else(|e| panic!("{kind} seed {seed}: {e}\n{}", report.text()));
    assert!(verify_induced_subdivision(&inst.graph, &cert).valid_induced);
    assert_eq!(cert.order(), 4);
    (cert, report.text())
}

/// Criterion 7: the dispatcher resolves one planted instance per case at
/// the published seeds, reporting the expected case and stages.
#[test]
fn criterion_7_theorem_dispatch() {
    let started = Instant::now();
    let (_, report1) = run_main("case1", CASE1_SEED);
    assert!(report1.contains("case 1"));
    assert!(report1.contains("largesub"));
    assert!(report1.contains("3-subdivision lift"));
    let (_, report2) = run_main("case2", CASE2_SEED);
    assert!(report2.contains("case 2"));
    assert!(report2.contains("ball_decomposition"));
    assert!(report2.contains("lll"));
    assert!(report2.contains("connected_good"));
    assert!(report2.contains("assemble"));
    pass(
        "7 (theorem dispatch)",
        "case 1 and case 2 certificates verified with expected stage logs".into(),
        started,
    );
}

/// Criterion 8: re-running criteria 3-7 with identical seeds reproduces
/// certificates and reports byte for byte.
#[test]
fn criterion_8_determinism() {
    let started = Instant::now();
    // Criterion 3 artifacts (a representative slice).
    for seed in [3000u64, 3017, 3049] {
        assert_eq!(run_unbalanced(seed), run_unbalanced(seed), "unbalanced {seed}");
    }
    // Criterion 4 traces.
    for seed in [4000u64, 4002, 4033] {
        assert_eq!(
            run_connectedgood(seed),
            run_connectedgood(seed),
            "connectedgood {seed}"
        );
    }
    // Criterion 5 digests.
    for i in [0u64, 21, 99] {
        assert_eq!(
            run_sparsify(500 + i / 20, 9_000 + i),
            run_sparsify(500 + i / 20, 9_000 + i),
            "sparsify {i}"
        );
    }
    // Criterion 6 assignments.
    for i in [0u64, 50] {
        assert_eq!(run_lll(i), run_lll(i), "lll {i}");
    }
    // Criterion 7 certificates and reports.
    let (c1a, r1a) = run_main("case1", CASE1_SEED);
    let (c1b, r1b) = run_main("case1", CASE1_SEED);
    assert_eq!(c1a.to_text(), c1b.to_text());
    assert_eq!(r1a, r1b);
    let (c2a, r2a) = run_main("case2", CASE2_SEED);
    let (c2b, r2b) = run_main("case2", CASE2_SEED);
    assert_eq!(c2a.to_text(), c2b.to_text());
    assert_eq!(r2a, r2b);
    pass(
        "8 (determinism)",
        "criteria 3-7 artifacts byte-identical across reruns".into(),
        started,
    );
}

/// The smallest hypothesis-satisfying host in nature stays out of reach:
/// the Moore bound at the unscaled floors exceeds any machine-sized graph,
/// which is why acceptance runs on planted instances.
#[test]
fn moore_bound_sanity() {
    let paper = ConstantsProfile::paper();
    let bound = indsub::graph::moore_floor(10usize.pow(8), paper.main_girth_floor.min(50))
        .unwrap();
    assert!(bound.floor > 1u128 << 100);
    let _ = BTreeSet::from([0usize]);
}
