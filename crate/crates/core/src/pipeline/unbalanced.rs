//! Induced subdivision from a very unbalanced bipartite configuration:
//! an independent fraction of A, degree-filtered to A'', a pruned random
//! subset R' of B, and the auxiliary graph whose edges are the A''-vertices
//! seeing exactly two R'-vertices. Density of that auxiliary graph feeds
//! the plain-subdivision finder; the 1-subdivision lift brings the result
//! back as an induced subdivision of the host.

use std::collections::BTreeMap;

use crate::certify::{lift_subdivision, verify_induced_subdivision, SubdivisionCertificate};
use crate::error::Error;
use crate::graph::{degeneracy_ordering, girth, induced_subgraph, Graph, VertexSet};
use crate::pipeline::report::PipelineReport;
use crate::probabilistic::{bernoulli_subset, retry_expectation, right_neighbor_prune};
use crate::profile::ConstantsProfile;
use crate::rng::RandomSource;
use crate::Result;

pub fn lemma_unbalanced(
    g: &Graph,
    a: &VertexSet,
    b: &VertexSet,
    d: usize,
    profile: &ConstantsProfile,
    rng: &RandomSource,
    report: &mut PipelineReport,
) -> Result<SubdivisionCertificate> {
    let stage = "unbalanced";
    if d < 2 {
        return Err(Error::InvalidInput("need d >= 2".into()).at_stage(stage));
    }
    if !a.is_disjoint(b) {
        return Err(Error::InvalidInput("A and B must be disjoint".into()).at_stage(stage));
    }
    let ord = degeneracy_ordering(g);
    if ord.degeneracy > 2 * d {
        return Err(Error::HypothesisNotMet(format!(
            "degeneracy {} exceeds 2d = {}",
            ord.degeneracy,
            2 * d
        ))
        .at_stage(stage));
    }
    if let Some(girth) = girth(g) {
        if girth < profile.bipartite_girth_floor {
            return Err(Error::HypothesisNotMet(format!(
                "girth {girth} below {}",
                profile.bipartite_girth_floor
            ))
            .at_stage(stage));
        }
    }
    let ratio = profile.unbalanced_ratio(d);
    if (a.len() as f64) < ratio * b.len() as f64 {
        return Err(Error::HypothesisNotMet(format!(
            "|A| = {} below ratio {ratio} * |B| = {}",
            a.len(),
            ratio * b.len() as f64
        ))
        .at_stage(stage));
    }
    let b_degree = |x: usize| g.neighbors(x).iter().filter(|w| b.contains(w)).count();
    if let Some(&bad) = a.iter().find(|&&x| b_degree(x) < 2) {
        return Err(Error::HypothesisNotMet(format!(
            "A-vertex {bad} has fewer than 2 neighbors in B"
        ))
        .at_stage(stage));
    }
    report.stage(
        stage,
        format!("|A| = {}, |B| = {}, d = {d}, ratio floor {ratio}", a.len(), b.len()),
    );

    // Independent subset of A, then drop heavy senders into B.
    let a_indep = crate::graph::greedy_independent_in(g, &ord, Some(a));
    let edge_cap = profile.unbalanced_edge_cap(d);
    let a2: VertexSet = a_indep
        .iter()
        .copied()
        .filter(|&x| b_degree(x) <= edge_cap)
        .collect();
    report.stage(
        stage,
        format!("independent |A'| = {}, filtered |A''| = {} (cap {edge_cap})", a_indep.len(), a2.len()),
    );

    // Retry the sampling until the good-vertex count clears the density
    // floor relative to the pruned sample.
    let p = profile.unbalanced_sample_p(d);
    let density = profile.aux_density(d);
    let sampled = retry_expectation(
        |_trial, stream| {
            let r = bernoulli_subset(b, p, stream);
            let r_pruned = right_neighbor_prune(&r, &ord, g);
            let goods: Vec<(usize, usize, usize)> = a2
                .iter()
                .copied()
                .filter_map(|y| {
                    let mut hits = g
                        .neighbors(y)
                        .iter()
                        .copied()
                        .filter(|w| r_pruned.contains(w));
                    match (hits.next(), hits.next(), hits.next()) {
                        (Some(x1), Some(x2), None) => Some((y, x1, x2)),
                        _ => None,
                    }
                })
                .collect();
            (r_pruned, goods)
        },
        |(r_pruned, goods)| {
            if r_pruned.len() < d + 1 {
                return f64::NEG_INFINITY;
            }
            goods.len() as f64 - density * r_pruned.len() as f64
        },
        0.0,
        profile.max_trials,
        rng,
        "unbalanced_sample",
    )
    .map_err(|e| e.at_stage(stage))?;
    let (r_pruned, goods) = sampled.value;
    report.stage(
        stage,
        format!(
            "trial {} accepted: |R'| = {}, good vertices = {}",
            sampled.trial + 1,
            r_pruned.len(),
            goods.len()
        ),
    );

    // Auxiliary graph on R': one edge per good vertex. Girth at least 5
    // makes the witness per pair unique.
    let sub = induced_subgraph(g, &r_pruned)?;
    let mut witness: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &(y, x1, x2) in &goods {
        let (lo, hi) = (
            sub.to_local[&x1.min(x2)],
            sub.to_local[&x1.max(x2)],
        );
        if witness.insert((lo, hi), y).is_some() {
            return Err(Error::StructureViolation(format!(
                "two good vertices share the pair ({}, {}): a 4-cycle violates the girth hypothesis",
                x1.min(x2),
                x1.max(x2)
            ))
            .at_stage(stage));
        }
    }
    let aux_edges: Vec<(usize, usize)> = witness.keys().copied().collect();
    let aux = Graph::from_edges(r_pruned.len(), &aux_edges)?;
    if (aux.m() as f64) < density * aux.n() as f64 {
        return Err(Error::StructureViolation(
            "auxiliary density gate failed after acceptance".into(),
        )
        .at_stage(stage));
    }
    report.stage(
        stage,
        format!(
            "auxiliary graph: {} vertices, {} edges (gate {} per vertex)",
            aux.n(),
            aux.m(),
            density
        ),
    );

    let aux_cert = crate::subdivision::find_subdivision(&aux, d, profile)
        .map_err(|e| e.at_stage(stage))?;

    // 1-subdivision realization: auxiliary edge (x, y) becomes the host
    // path x - witness - y.
    let mut realization: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (&(lo, hi), &y) in &witness {
        realization.insert((lo, hi), vec![sub.to_original[lo], y, sub.to_original[hi]]);
    }
    let cert = lift_subdivision(g, &aux, &aux_cert, &realization).map_err(|e| e.at_stage(stage))?;
    let check = verify_induced_subdivision(g, &cert);
    if !check.valid_induced {
        return Err(Error::StructureViolation(format!(
            "lifted certificate not induced: {:?}",
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
