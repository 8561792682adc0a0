//! Induced subdivision under a polynomial maximum-degree cap: ball
//! decomposition, path structure, event-driven sparsification through the
//! resampler, branchable detection, connected-good extraction on the
//! auxiliary graph, and assembly.

use std::collections::BTreeMap;

use crate::certify::{verify_induced_subdivision, SubdivisionCertificate};
use crate::connectivity::connected_good;
use crate::error::Error;
use crate::graph::{girth, Graph, VertexSet};
use crate::pipeline::report::PipelineReport;
use crate::pipeline::structure::{
    assemble_from_structure, assemble_path_structure, ball_decomposition, branchable_set,
    build_structure, BranchWitness, StructureGraph,
};
use crate::probabilistic::{lll_condition_report, lll_resample, Event, EventSystem, LllOutcome};
use crate::profile::ConstantsProfile;
use crate::rng::RandomSource;
use crate::Result;

pub fn lemma_maxdegree(
    g: &Graph,
    u: &VertexSet,
    d: usize,
    profile: &ConstantsProfile,
    rng: &RandomSource,
    report: &mut PipelineReport,
) -> Result<SubdivisionCertificate> {
    let stage = "maxdegree";
    let n = g.n();
    if u.len() * profile.maxdeg_u_frac_div < n {
        return Err(Error::HypothesisNotMet(format!(
            "|U| = {} below n/{}",
            u.len(),
            profile.maxdeg_u_frac_div
        ))
        .at_stage(stage));
    }
    if let Some(&bad) = u.iter().find(|&&v| g.degree(v) < d) {
        return Err(Error::HypothesisNotMet(format!(
            "U-vertex {bad} has degree {} below {d}",
            g.degree(bad)
        ))
        .at_stage(stage));
    }
    if g.min_degree() < profile.maxdeg_delta_floor(d) {
        return Err(Error::HypothesisNotMet(format!(
            "minimum degree {} below {}",
            g.min_degree(),
            profile.maxdeg_delta_floor(d)
        ))
        .at_stage(stage));
    }
    if g.max_degree() > profile.maxdeg_delta_cap(d) {
        return Err(Error::HypothesisNotMet(format!(
            "maximum degree {} above {}",
            g.max_degree(),
            profile.maxdeg_delta_cap(d)
        ))
        .at_stage(stage));
    }
    if let Some(girth) = girth(g) {
        if girth < profile.maxdeg_girth_floor {
            return Err(Error::HypothesisNotMet(format!(
                "girth {girth} below {}",
                profile.maxdeg_girth_floor
            ))
            .at_stage(stage));
        }
    }
    report.stage(
        stage,
        format!("hypotheses hold: n = {n}, |U| = {}, d = {d}", u.len()),
    );

    let bd = ball_decomposition(g, u, profile).map_err(|e| e.at_stage("ball_decomposition"))?;
    report.stage(
        "ball_decomposition",
        format!(
            "{} centers ({} from U, {} completion)",
            bd.centers.len(),
            bd.u_centers.len(),
            bd.w_centers.len()
        ),
    );
    let sg = build_structure(g, &bd, profile).map_err(|e| e.at_stage("build_structure"))?;
    report.stage(
        "build_structure",
        format!(
            "auxiliary candidates: {} centers, {} edges",
            sg.h_star.n(),
            sg.h_star.m()
        ),
    );

    // Event system over center coins: for each center x and host neighbor
    // z of x, the bad event is "x kept but fewer than the floor many
    // surviving paths leave x through z". A global concentration event
    // keeps enough tracked centers in the sample.
    let p = profile.sparsify_p(d);
    let floor = profile.event_path_floor(d);
    let sys = build_event_system(g, &sg, &bd.u_centers, p, floor, profile);
    report.stage(
        "lll",
        format!(
            "{} events over {} variables; {}",
            sys.events.len(),
            sys.probs.len(),
            lll_condition_report(&sys, p)
        ),
    );
    let outcome = lll_resample(&sys, rng, profile.max_rounds);
    let assignment = match outcome {
        LllOutcome::Satisfied {
            assignment,
            resamples,
        } => {
            report.stage("lll", format!("satisfied after {resamples} resamples"));
            assignment
        }
        LllOutcome::Exhausted { violated, .. } => {
            return Err(Error::RoundsExhausted(format!(
                "{} events still violated after {} rounds",
                violated.len(),
                profile.max_rounds
            ))
            .at_stage("lll"));
        }
    };
    let s: VertexSet = sg
        .centers
        .iter()
        .enumerate()
        .filter_map(|(i, &c)| assignment[i].then_some(c))
        .collect();
    let ps = assemble_path_structure(g, &sg, &s, profile).map_err(|e| e.at_stage("sparsify"))?;
    report.stage(
        "sparsify",
        format!("kept {} centers, {} surviving edges", ps.s.len(), ps.aux.m()),
    );

    // Minimum degree of the surviving auxiliary graph (follows from the
    // avoided events for kept centers, re-checked here).
    let hmin = profile.struct_hmin(d).min(d);
    if ps.aux.n() == 0 || ps.aux.min_degree() < hmin {
        return Err(Error::StructureViolation(format!(
            "auxiliary minimum degree {} below {hmin}",
            ps.aux.min_degree()
        ))
        .at_stage("sparsify"));
    }

    let witnesses = branchable_set(&ps, g, d);
    let floor_branch = profile.branchable_floor(ps.s.len(), d);
    report.stage(
        "branchable",
        format!(
            "{} branchable vertices (floor {floor_branch})",
            witnesses.len()
        ),
    );
    if witnesses.len() < floor_branch.max(d + 1) {
        return Err(Error::NotFound(format!(
            "only {} branchable vertices, need {}",
            witnesses.len(),
            floor_branch.max(d + 1)
        ))
        .at_stage("branchable"));
    }
    let witness_of: BTreeMap<usize, &BranchWitness> =
        witnesses.iter().map(|w| (w.center, w)).collect();

    // Connected-good on the auxiliary graph, tracking branchable vertices.
    let b_local: VertexSet = witnesses
        .iter()
        .filter_map(|w| ps.local_of(w.center))
        .collect();
    let cg = connected_good(&ps.aux, &b_local, d, profile).map_err(|e| e.at_stage("connected_good"))?;
    report.stage(
        "connected_good",
        format!(
            "extracted {} of {} structure vertices, {} preserved branchables in {} rounds",
            cg.h_prime.len(),
            ps.aux.n(),
            cg.preserved.len(),
            cg.trace.rounds.len()
        ),
    );

    // Restrict the structure to the extracted subgraph.
    let kept_hosts: VertexSet = cg.h_prime.iter().map(|&l| ps.aux_ids[l]).collect();
    let ps2 = assemble_path_structure(g, &sg, &kept_hosts, profile)
        .map_err(|e| e.at_stage("restrict"))?;
    // Re-derive witnesses inside the restricted structure: preserved
    // vertices keep their full auxiliary degree, so their original
    // witnesses survive, but membership is re-checked.
    let preserved_hosts: VertexSet = cg.preserved.iter().map(|&l| ps.aux_ids[l]).collect();

    // Greedy selection of d+1 branchable vertices pairwise far apart in
    // the restricted auxiliary graph.
    let mut chosen: Vec<BranchWitness> = Vec::new();
    for &host in &preserved_hosts {
        let Some(&w) = witness_of.get(&host) else {
            continue;
        };
        if w.witnesses.iter().any(|x| !kept_hosts.contains(x)) {
            continue;
        }
        let far_enough = chosen.iter().all(|c| {
            let a = ps2.local_of(c.center).unwrap();
            let b = ps2.local_of(host).unwrap();
            ps2.aux.bfs_distances(a)[b] >= profile.branch_separation
        });
        if far_enough {
            chosen.push(w.clone());
            if chosen.len() == d + 1 {
                break;
            }
        }
    }
    if chosen.len() < d + 1 {
        return Err(Error::NotFound(format!(
            "could not pick {} separated branchable vertices (found {})",
            d + 1,
            chosen.len()
        ))
        .at_stage("branch_selection"));
    }
    report.stage(
        "branch_selection",
        format!(
            "branch vertices: {}",
            chosen
                .iter()
                .map(|w| w.center.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        ),
    );

    let cert = assemble_from_structure(&ps2, g, &chosen, d, profile, report)?;
    let check = verify_induced_subdivision(g, &cert);
    if !check.valid_induced {
        return Err(Error::StructureViolation(
            "final certificate failed induced verification".into(),
        )
        .at_stage(stage));
    }
    Ok(cert)
}

/// Events: per kept center and host neighbor, enough surviving paths
/// through that neighbor; plus the concentration event on tracked centers.
fn build_event_system(
    g: &Graph,
    sg: &StructureGraph,
    u_centers: &VertexSet,
    p: f64,
    path_floor: usize,
    profile: &ConstantsProfile,
) -> EventSystem {
    let nv = sg.centers.len();
    // For center local x and neighbor z (host id): auxiliary edges at x
    // whose path passes through z.
    let mut through: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
    for (&(i, j), path) in &sg.path_of {
        for endpoint in [i, j] {
            let host_c = sg.centers[endpoint];
            // Second vertex of the path as seen from this endpoint.
            let second = if path.first() == Some(&host_c) {
                path.get(1)
            } else {
                path.get(path.len().saturating_sub(2))
            };
            if let Some(&z) = second {
                through.entry((endpoint, z)).or_default().push((i, j));
            }
        }
    }
    let mut events = Vec::new();
    for (local_x, &host_x) in sg.centers.iter().enumerate() {
        for &z in g.neighbors(host_x) {
            let edges = through.get(&(local_x, z)).cloned().unwrap_or_default();
            // Scope: x's coin plus, per candidate edge, the other endpoint
            // and the extraneous incident centers.
            let mut scope: VertexSet = VertexSet::from([local_x]);
            let mut checks: Vec<(usize, Vec<usize>)> = Vec::new();
            for &(i, j) in &edges {
                let other = if i == local_x { j } else { i };
                let extraneous: Vec<usize> = sg.f_adj[&(i, j)]
                    .iter()
                    .copied()
                    .filter(|&c| c != i && c != j)
                    .collect();
                scope.insert(other);
                scope.extend(extraneous.iter().copied());
                checks.push((other, extraneous));
            }
            let scope: Vec<usize> = scope.into_iter().collect();
            events.push(Event {
                name: format!("E_{host_x}_{z}"),
                scope,
                predicate: Box::new(move |assign: &[bool]| {
                    if !assign[local_x] {
                        return false;
                    }
                    let surviving = checks
                        .iter()
                        .filter(|(other, extraneous)| {
                            assign[*other] && extraneous.iter().all(|&c| !assign[c])
                        })
                        .count();
                    surviving < path_floor
                }),
            });
        }
    }
    // Concentration: at least p/div of the tracked centers stay.
    let tracked: Vec<usize> = sg
        .centers
        .iter()
        .enumerate()
        .filter_map(|(i, c)| u_centers.contains(c).then_some(i))
        .collect();
    if !tracked.is_empty() {
        let need = ((p / profile.concentration_div) * tracked.len() as f64).ceil() as usize;
        let tracked_scope = tracked.clone();
        events.push(Event {
            name: "concentration".into(),
            scope: tracked.clone(),
            predicate: Box::new(move |assign: &[bool]| {
                tracked_scope.iter().filter(|&&i| assign[i]).count() < need
            }),
        });
    }
    EventSystem {
        probs: vec![p; nv],
        events,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_planted, PlantedParams};

    #[test]
    fn planted_skeleton_end_to_end() {
        let rng = RandomSource::new(1203);
        let params = PlantedParams {
            size: 450,
            ..Default::default()
        };
        let inst = gen_planted("maxdegree", &params, &rng).unwrap();
        let profile = ConstantsProfile::desk();
        let mut report = PipelineReport::new();
        let cert = lemma_maxdegree(
            &inst.graph,
            inst.role("u").unwrap(),
            3,
            &profile,
            &rng,
            &mut report,
        )
        .unwrap();
        assert_eq!(cert.order(), 4);
        assert!(verify_induced_subdivision(&inst.graph, &cert).valid_induced);
        assert!(report.mentions("connected_good"));
    }

    #[test]
    fn degree_cap_violation_rejected() {
        let rng = RandomSource::new(3);
        let inst = gen_planted(
            "maxdegree",
            &PlantedParams {
                size: 60,
                ..Default::default()
            },
            &rng,
        )
        .unwrap();
        // Push one vertex's degree past the cap.
        let mut edges = inst.graph.edges();
        let hub = inst.graph.n();
        for v in 0..30usize {
            edges.push((hub, v * 40 + 1));
        }
        let g = crate::graph::Graph::from_edges(hub + 1, &edges).unwrap();
        let u: VertexSet = g.vertices().filter(|&v| g.degree(v) >= 3).collect();
        let err = lemma_maxdegree(
            &g,
            &u,
            3,
            &ConstantsProfile::desk(),
            &rng,
            &mut PipelineReport::new(),
        )
        .unwrap_err();
        assert!(matches!(err.root(), Error::HypothesisNotMet(_)));
        assert!(err.to_string().contains("maximum degree"));
    }

    #[test]
    fn girth_floor_violation_rejected() {
        let g = crate::generators::gen_named("petersen").unwrap();
        let u: VertexSet = g.vertices().collect();
        let err = lemma_maxdegree(
            &g,
            &u,
            3,
            &ConstantsProfile::desk(),
            &RandomSource::new(1),
            &mut PipelineReport::new(),
        )
        .unwrap_err();
        assert!(matches!(err.root(), Error::HypothesisNotMet(_)));
        assert!(err.to_string().contains("girth"));
    }
}
