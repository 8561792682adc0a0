//! Top-level dispatch: reduce to the densest core, split off the
//! high-degree set B, route through the unbalanced lemma when many
//! vertices see B twice, and otherwise branch on the size of the
//! exactly-once class: the double-sampling 3-subdivision lift (case 1) or
//! the peel to a degree-capped subgraph and the structure machinery
//! (case 2).

use std::collections::BTreeMap;

use crate::certify::{lift_subdivision, verify_induced_subdivision, SubdivisionCertificate};
use crate::connectivity::{max_core, peel_to_min_degree};
use crate::error::Error;
use crate::graph::{
    degeneracy_ordering, girth, induced_subgraph, Graph, InducedSubgraph, VertexSet,
};
use crate::pipeline::largesub::{lemma_largesub, LargesubOutcome};
use crate::pipeline::maxdegree::lemma_maxdegree;
use crate::pipeline::report::PipelineReport;
use crate::pipeline::unbalanced::lemma_unbalanced;
use crate::profile::ConstantsProfile;
use crate::rng::RandomSource;
use crate::Result;

pub fn theorem_main(
    g: &Graph,
    d: usize,
    profile: &ConstantsProfile,
    rng: &RandomSource,
    report: &mut PipelineReport,
) -> Result<SubdivisionCertificate> {
    let stage = "main";
    if g.min_degree() < profile.main_delta_floor(d) {
        return Err(Error::HypothesisNotMet(format!(
            "minimum degree {} below {}",
            g.min_degree(),
            profile.main_delta_floor(d)
        ))
        .at_stage(stage));
    }
    if let Some(girth) = girth(g) {
        if girth < profile.main_girth_floor {
            return Err(Error::HypothesisNotMet(format!(
                "girth {girth} below {}",
                profile.main_girth_floor
            ))
            .at_stage(stage));
        }
    }
    // Reduce to the densest core; its minimum degree equals its degeneracy,
    // which keeps the degree-threshold counting honest.
    let core = max_core(g);
    let sub = induced_subgraph(g, &core)?;
    let g0 = &sub.graph;
    let n0 = g0.n();
    let ord = degeneracy_ordering(g0);
    report.stage(
        stage,
        format!(
            "core: {} of {} vertices, min degree {}, degeneracy {}",
            n0,
            g.n(),
            g0.min_degree(),
            ord.degeneracy
        ),
    );

    let b_threshold = profile.main_b_threshold(d);
    let b: VertexSet = g0.vertices().filter(|&v| g0.degree(v) >= b_threshold).collect();
    let b_cap = profile.main_b_size_cap(n0, d);
    report.stage(
        stage,
        format!(
            "B (degree >= {b_threshold}): {} vertices; cap diagnostic {:.1} {}",
            b.len(),
            b_cap,
            if (b.len() as f64) <= b_cap { "ok" } else { "exceeded" }
        ),
    );

    let b_edges = |v: usize| g0.neighbors(v).iter().filter(|w| b.contains(w)).count();
    let a: VertexSet = g0
        .vertices()
        .filter(|&v| !b.contains(&v) && b_edges(v) >= 2)
        .collect();
    if (a.len() as f64) > profile.main_a_cap(n0, d) {
        report.stage(stage, format!("|A| = {} large; routing to unbalanced", a.len()));
        let cert = lemma_unbalanced(g0, &a, &b, d, profile, rng, report)
            .map_err(|e| e.at_stage("a-dense"))?;
        return finish(g, &sub, cert, report);
    }
    let a_prime: VertexSet = g0
        .vertices()
        .filter(|&v| !b.contains(&v) && b_edges(v) == 1)
        .collect();
    report.stage(
        stage,
        format!("|A| = {}, |A'| = {}, n0/2 = {}", a.len(), a_prime.len(), n0 / 2),
    );

    let cert = if 2 * a_prime.len() >= n0 {
        report.stage(stage, "case 1: the exactly-once class is large");
        case1(g0, &a, &b, &a_prime, d, profile, rng, report)?
    } else {
        report.stage(stage, "case 2: the exactly-once class is small");
        case2(g0, &a, &b, d, profile, rng, report)?
    };
    finish(g, &sub, cert, report)
}

/// Translate a core certificate back to the original ids and verify it
/// against the original graph.
fn finish(
    g: &Graph,
    sub: &InducedSubgraph,
    cert: SubdivisionCertificate,
    report: &mut PipelineReport,
) -> Result<SubdivisionCertificate> {
    let branch: Vec<usize> = cert.branch.iter().map(|&v| sub.to_original[v]).collect();
    let mut paths = BTreeMap::new();
    for (&key, path) in &cert.paths {
        paths.insert(
            key,
            path.iter().map(|&v| sub.to_original[v]).collect::<Vec<_>>(),
        );
    }
    let cert = SubdivisionCertificate { branch, paths };
    let check = verify_induced_subdivision(g, &cert);
    if !check.valid_induced {
        return Err(Error::StructureViolation(
            "certificate failed induced verification against the original graph".into(),
        )
        .at_stage("main"));
    }
    report.stage(
        "main",
        format!(
            "induced K_{} subdivision verified against the input ({} vertices)",
            cert.order(),
            cert.vertices().len()
        ),
    );
    Ok(cert)
}

#[allow(clippy::too_many_arguments)]
fn case1(
    g0: &Graph,
    a: &VertexSet,
    b: &VertexSet,
    a_prime: &VertexSet,
    d: usize,
    profile: &ConstantsProfile,
    rng: &RandomSource,
    report: &mut PipelineReport,
) -> Result<SubdivisionCertificate> {
    let stage = "case1";
    let n0 = g0.n();
    let split = match lemma_largesub(g0, a_prime, d, profile, rng, report)? {
        LargesubOutcome::Certificate(cert) => {
            report.stage(stage, "large-subset lemma short-circuited with a certificate");
            return Ok(cert);
        }
        LargesubOutcome::Split { x_prime, y } => (x_prime, y),
    };
    let (x_prime, y_raw) = split;
    // Remove A and B from Y (their members carry extra edges toward B).
    let y: VertexSet = y_raw
        .iter()
        .copied()
        .filter(|v| !a.contains(v) && !b.contains(v))
        .collect();
    report.stage(
        stage,
        format!("|X'| = {}, |Y| = {} after removing A and B", x_prime.len(), y.len()),
    );
    if y.is_empty() {
        return Err(Error::NotFound("Y emptied by the A/B removal".into()).at_stage(stage));
    }

    // Unique B-neighbor of each X' vertex.
    let mut b_of: BTreeMap<usize, usize> = BTreeMap::new();
    for &x in &x_prime {
        let mut hits = g0.neighbors(x).iter().copied().filter(|w| b.contains(w));
        let (first, second) = (hits.next(), hits.next());
        match (first, second) {
            (Some(z), None) => {
                b_of.insert(x, z);
            }
            _ => {
                return Err(Error::StructureViolation(format!(
                    "X' vertex {x} does not have a unique B-neighbor"
                ))
                .at_stage(stage));
            }
        }
    }

    // Greedy filter to pairwise disjoint X'-neighborhoods.
    let mut taken: VertexSet = VertexSet::new();
    let mut y_prime: VertexSet = VertexSet::new();
    for &v in &y {
        let nbhd: Vec<usize> = g0
            .neighbors(v)
            .iter()
            .copied()
            .filter(|w| x_prime.contains(w))
            .collect();
        if nbhd.iter().all(|w| !taken.contains(w)) {
            taken.extend(nbhd.iter().copied());
            y_prime.insert(v);
        }
    }
    let prune_div = profile.case1_y_prune_div(d);
    report.stage(
        stage,
        format!(
            "|Y'| = {} with disjoint X'-neighborhoods (guarantee |Y|/{prune_div} = {})",
            y_prime.len(),
            y.len() / prune_div
        ),
    );

    // Double sampling over B and X' with right-neighbor conditions taken
    // against the raw samples.
    let ord = degeneracy_ordering(g0);
    let p = profile.case1_sample_p(d);
    let floor = profile.case1_good_floor(n0, d);
    let b_list: Vec<usize> = b.iter().copied().collect();
    let x_list: Vec<usize> = x_prime.iter().copied().collect();
    let sampled = crate::probabilistic::retry_expectation(
        |_trial, stream| {
            let rb0: VertexSet = b_list
                .iter()
                .copied()
                .filter(|_| stream.bernoulli(p))
                .collect();
            let rx0: VertexSet = x_list
                .iter()
                .copied()
                .filter(|_| stream.bernoulli(p))
                .collect();
            let rb: VertexSet = rb0
                .iter()
                .copied()
                .filter(|&z| {
                    !g0.neighbors(z)
                        .iter()
                        .any(|&w| rb0.contains(&w) && ord.position[w] > ord.position[z])
                })
                .collect();
            let rx: VertexSet = rx0
                .iter()
                .copied()
                .filter(|&x| {
                    rb.contains(&b_of[&x])
                        && !g0
                            .neighbors(x)
                            .iter()
                            .any(|&w| rx0.contains(&w) && ord.position[w] > ord.position[x])
                })
                .collect();
            let goods: Vec<(usize, usize, usize)> = y_prime
                .iter()
                .copied()
                .filter_map(|v| {
                    if g0.neighbors(v).iter().any(|w| rb.contains(w)) {
                        return None;
                    }
                    let mut hits = g0.neighbors(v).iter().copied().filter(|w| rx.contains(w));
                    match (hits.next(), hits.next(), hits.next()) {
                        (Some(x1), Some(x2), None) => Some((v, x1, x2)),
                        _ => None,
                    }
                })
                .collect();
            (rb, rx, goods)
        },
        |(rb, _rx, goods)| {
            if rb.len() < d + 1 {
                return f64::NEG_INFINITY;
            }
            goods.len() as f64
        },
        floor,
        profile.max_trials,
        rng,
        "case1_sample",
    )
    .map_err(|e| e.at_stage(stage))?;
    let (rb, _rx, goods) = sampled.value;
    report.stage(
        stage,
        format!(
            "trial {} accepted: |R_B| = {}, good vertices = {} (floor {:.1})",
            sampled.trial + 1,
            rb.len(),
            goods.len(),
            floor
        ),
    );

    // Auxiliary graph on R_B: one edge per good vertex through its two
    // sampled X'-neighbors; duplicates collapse keeping the first witness.
    let rb_ids: Vec<usize> = rb.iter().copied().collect();
    let rb_local: BTreeMap<usize, usize> = rb_ids
        .iter()
        .enumerate()
        .map(|(i, &z)| (z, i))
        .collect();
    let mut witness: BTreeMap<(usize, usize), (usize, usize, usize)> = BTreeMap::new();
    let mut duplicates = 0usize;
    for &(v, x1, x2) in &goods {
        let (z1, z2) = (b_of[&x1], b_of[&x2]);
        if z1 == z2 {
            return Err(Error::StructureViolation(format!(
                "good vertex {v} maps to a single hub: a short cycle violates the girth hypothesis"
            ))
            .at_stage(stage));
        }
        let key = (rb_local[&z1].min(rb_local[&z2]), rb_local[&z1].max(rb_local[&z2]));
        // Orient the triple so the first X'-vertex attaches the smaller
        // local hub.
        let (lo_x, hi_x) = if rb_local[&z1] < rb_local[&z2] {
            (x1, x2)
        } else {
            (x2, x1)
        };
        if witness.insert(key, (lo_x, v, hi_x)).is_some() {
            duplicates += 1;
        }
    }
    if duplicates > 0 {
        report.stage(stage, format!("{duplicates} duplicate hub pairs collapsed"));
    }
    let aux_edges: Vec<(usize, usize)> = witness.keys().copied().collect();
    let aux = Graph::from_edges(rb_ids.len(), &aux_edges)?;
    report.stage(
        stage,
        format!("auxiliary graph on R_B: {} vertices, {} edges", aux.n(), aux.m()),
    );
    let aux_cert =
        crate::subdivision::find_subdivision(&aux, d, profile).map_err(|e| e.at_stage(stage))?;

    // 3-subdivision realization: hub - spoke - good vertex - spoke - hub.
    let mut realization: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (&(i, j), &(x1, v, x2)) in &witness {
        realization.insert((i, j), vec![rb_ids[i], x1, v, x2, rb_ids[j]]);
    }
    let cert = lift_subdivision(g0, &aux, &aux_cert, &realization).map_err(|e| e.at_stage(stage))?;
    let check = verify_induced_subdivision(g0, &cert);
    if !check.valid_induced {
        return Err(Error::StructureViolation(format!(
            "3-subdivision lift not induced: {:?}",
            check.violations.first().map(|x| x.kind)
        ))
        .at_stage(stage));
    }
    report.stage(
        stage,
        format!("3-subdivision lift verified: K_{} on branch hubs", d + 1),
    );
    Ok(cert)
}

fn case2(
    g0: &Graph,
    a: &VertexSet,
    b: &VertexSet,
    d: usize,
    profile: &ConstantsProfile,
    rng: &RandomSource,
    report: &mut PipelineReport,
) -> Result<SubdivisionCertificate> {
    let stage = "case2";
    let n0 = g0.n();
    let without_b: VertexSet = g0.vertices().filter(|v| !b.contains(v)).collect();
    let gp = induced_subgraph(g0, &without_b)?;
    let threshold = profile.maxdeg_delta_floor(d);
    let (core_local, peeled_local) = peel_to_min_degree(&gp.graph, threshold);
    let peeled: Vec<usize> = peeled_local.iter().map(|&v| gp.to_original[v]).collect();
    report.stage(
        stage,
        format!(
            "removed |B| = {}, peeled {} vertices at threshold {threshold}",
            b.len(),
            peeled.len()
        ),
    );

    // Escape hatch: a large peel forces many peeled vertices with two
    // edges into A, handing the pair to the unbalanced lemma.
    let peel_cap = profile.case2_peel_cap(a.len(), d).max(1.0);
    if !peeled.is_empty() && peeled.len() as f64 >= peel_cap {
        let peeled_set: VertexSet = peeled.iter().copied().collect();
        let a_lemma: VertexSet = peeled_set
            .iter()
            .copied()
            .filter(|&v| {
                !a.contains(&v)
                    && g0.neighbors(v).iter().filter(|w| a.contains(w)).count() >= 2
            })
            .collect();
        report.stage(
            stage,
            format!(
                "peel {} >= cap {peel_cap:.1}; routing to unbalanced with |A| = {}, |B| = {}",
                peeled.len(),
                a_lemma.len(),
                a.len()
            ),
        );
        let cert = lemma_unbalanced(g0, &a_lemma, a, d, profile, rng, report)
            .map_err(|e| e.at_stage("case2-peel"))?;
        return Ok(cert);
    }

    let core: VertexSet = core_local.iter().map(|&v| gp.to_original[v]).collect();
    let gpp = induced_subgraph(g0, &core)?;
    let g2 = &gpp.graph;
    // Properties of the remaining graph, checked before handing off.
    if g2.max_degree() > profile.maxdeg_delta_cap(d) {
        return Err(Error::HypothesisNotMet(format!(
            "post-peel maximum degree {} above {}",
            g2.max_degree(),
            profile.maxdeg_delta_cap(d)
        ))
        .at_stage(stage));
    }
    if g2.n() == 0 || g2.min_degree() < threshold {
        return Err(Error::HypothesisNotMet("post-peel minimum degree collapsed".into())
            .at_stage(stage));
    }
    let u_local: VertexSet = g2.vertices().filter(|&v| g2.degree(v) >= d).collect();
    if u_local.len() * profile.case2_u_frac_div < n0 {
        return Err(Error::HypothesisNotMet(format!(
            "only {} post-peel vertices keep degree >= {d} (need n0/{} = {})",
            u_local.len(),
            profile.case2_u_frac_div,
            n0 / profile.case2_u_frac_div
        ))
        .at_stage(stage));
    }
    if let Some(girth) = girth(g2) {
        if girth < profile.maxdeg_girth_floor {
            return Err(Error::HypothesisNotMet(format!(
                "post-peel girth {girth} below {}",
                profile.maxdeg_girth_floor
            ))
            .at_stage(stage));
        }
    }
    report.stage(
        stage,
        format!(
            "remaining graph: {} vertices, max degree {}, {} tracked",
            g2.n(),
            g2.max_degree(),
            u_local.len()
        ),
    );
    let cert_local = lemma_maxdegree(g2, &u_local, d, profile, rng, report)?;
    // Back to core ids.
    let branch: Vec<usize> = cert_local
        .branch
        .iter()
        .map(|&v| gpp.to_original[v])
        .collect();
    let mut paths = BTreeMap::new();
    for (&key, path) in &cert_local.paths {
        paths.insert(
            key,
            path.iter().map(|&v| gpp.to_original[v]).collect::<Vec<_>>(),
        );
    }
    Ok(SubdivisionCertificate { branch, paths })
}
