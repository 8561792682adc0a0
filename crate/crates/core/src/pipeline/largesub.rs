//! The large-subset split: pass to a degree-capped subset Z of X, halve it
//! at random until the cut-edge floor holds, classify outside vertices by
//! their edge count into the kept half, and either hand back the pair
//! (X', Y) with its five verified properties or fall into the unbalanced
//! lemma when the middle class is too small.

use crate::certify::SubdivisionCertificate;
use crate::error::Error;
use crate::graph::{degeneracy_ordering, girth, Graph, VertexSet};
use crate::pipeline::report::PipelineReport;
use crate::pipeline::unbalanced::lemma_unbalanced;
use crate::probabilistic::retry_expectation;
use crate::profile::ConstantsProfile;
use crate::rng::RandomSource;
use crate::Result;

/// Either the structural split the lemma promises, or an induced
/// subdivision found along the way by the contradiction branch.
#[derive(Debug, Clone)]
pub enum LargesubOutcome {
    Split { x_prime: VertexSet, y: VertexSet },
    Certificate(SubdivisionCertificate),
}

pub fn lemma_largesub(
    g: &Graph,
    x: &VertexSet,
    d: usize,
    profile: &ConstantsProfile,
    rng: &RandomSource,
    report: &mut PipelineReport,
) -> Result<LargesubOutcome> {
    let stage = "largesub";
    let n = g.n();
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
            return Err(
                Error::HypothesisNotMet(format!("girth {girth} below 5")).at_stage(stage)
            );
        }
    }
    if 2 * x.len() < n {
        return Err(Error::HypothesisNotMet(format!(
            "|X| = {} below n/2 = {}",
            x.len(),
            n / 2
        ))
        .at_stage(stage));
    }
    if let Some(&bad) = x.iter().find(|&&v| g.degree(v) < d) {
        return Err(Error::HypothesisNotMet(format!(
            "X-vertex {bad} has degree {} below d = {d}",
            g.degree(bad)
        ))
        .at_stage(stage));
    }

    // Degree-capped subset of X.
    let cap = profile.largesub_degree_cap(d);
    let z: VertexSet = x.iter().copied().filter(|&v| g.degree(v) <= cap).collect();
    if z.len() * profile.largesub_z_frac_div < n {
        return Err(Error::HypothesisNotMet(format!(
            "degree-capped subset |Z| = {} below n/{}",
            z.len(),
            profile.largesub_z_frac_div
        ))
        .at_stage(stage));
    }
    report.stage(stage, format!("|X| = {}, |Z| = {} (cap {cap})", x.len(), z.len()));

    // Random halving, retried until the cut floor holds.
    let z_list: Vec<usize> = z.iter().copied().collect();
    let cut_floor = profile.largesub_cut_floor(n, d);
    let halving = retry_expectation(
        |_trial, stream| -> VertexSet {
            z_list
                .iter()
                .copied()
                .filter(|_| stream.bernoulli(0.5))
                .collect()
        },
        |z1| {
            let cut: usize = z1
                .iter()
                .map(|&v| g.neighbors(v).iter().filter(|w| !z1.contains(w)).count())
                .sum();
            cut as f64
        },
        cut_floor,
        profile.max_trials,
        rng,
        "largesub_halving",
    )
    .map_err(|e| e.at_stage(stage))?;
    let z1 = halving.value;
    report.stage(
        stage,
        format!(
            "halving trial {} accepted: |Z1| = {}, cut {} >= {}",
            halving.trial + 1,
            z1.len(),
            halving.score,
            cut_floor
        ),
    );

    // Classify outside vertices by edges into Z1.
    let into_z1 = |v: usize| g.neighbors(v).iter().filter(|w| z1.contains(w)).count();
    let ycap = profile.largesub_ydeg_cap(d);
    let mut u_mid = VertexSet::new(); // 2..=ycap edges into Z1
    let mut u_heavy = VertexSet::new(); // more than ycap
    for v in g.vertices() {
        if z1.contains(&v) {
            continue;
        }
        let k = into_z1(v);
        if k >= 2 {
            if k <= ycap {
                u_mid.insert(v);
            } else {
                u_heavy.insert(v);
            }
        }
    }
    let small_threshold = profile.largesub_small_threshold(n, d);
    report.stage(
        stage,
        format!(
            "|U \\ U'| = {}, |U'| = {}, branch threshold {small_threshold:.1}",
            u_mid.len(),
            u_heavy.len()
        ),
    );

    if (u_mid.len() as f64) < small_threshold {
        // Contradiction branch: Z1-vertices with two or more edges into the
        // middle class form the unbalanced A-side against the middle class.
        let into_mid = |v: usize| g.neighbors(v).iter().filter(|w| u_mid.contains(w)).count();
        let a_side: VertexSet = z1.iter().copied().filter(|&v| into_mid(v) >= 2).collect();
        report.stage(
            stage,
            format!(
                "middle class small; routing to unbalanced with |A| = {}, |B| = {}",
                a_side.len(),
                u_mid.len()
            ),
        );
        let cert = lemma_unbalanced(g, &a_side, &u_mid, d, profile, rng, report)
            .map_err(|e| e.at_stage(stage))?;
        return Ok(LargesubOutcome::Certificate(cert));
    }

    // Independent subset of the middle class.
    let y = crate::graph::greedy_independent_in(g, &ord, Some(&u_mid));
    let y_floor = profile.largesub_y_floor(n, d);
    if (y.len() as f64) < y_floor {
        return Err(Error::TrialsExhausted(format!(
            "independent subset |Y| = {} below floor {y_floor:.1}",
            y.len()
        ))
        .at_stage(stage));
    }
    let x_prime = z1;

    // The five promised properties, re-verified.
    let violations = split_property_violations(g, x, &x_prime, &y, d, profile, n);
    if let Some(msg) = violations {
        return Err(Error::StructureViolation(msg).at_stage(stage));
    }
    report.stage(
        stage,
        format!("split verified: |X'| = {}, |Y| = {}", x_prime.len(), y.len()),
    );
    Ok(LargesubOutcome::Split { x_prime, y })
}

/// Check properties (1)-(5) of the split; `None` when all hold.
fn split_property_violations(
    g: &Graph,
    x: &VertexSet,
    x_prime: &VertexSet,
    y: &VertexSet,
    d: usize,
    profile: &ConstantsProfile,
    n: usize,
) -> Option<String> {
    if !x_prime.is_subset(x) {
        return Some("X' not contained in X".into());
    }
    if !y.is_disjoint(x_prime) {
        return Some("Y intersects X'".into());
    }
    if (y.len() as f64) < profile.largesub_y_floor(n, d) {
        return Some("Y below its size floor".into());
    }
    for &u in y {
        for &v in y {
            if u < v && g.has_edge(u, v) {
                return Some(format!("Y not independent: edge ({u}, {v})"));
            }
        }
    }
    let ycap = profile.largesub_ydeg_cap(d);
    for &u in y {
        let k = g.neighbors(u).iter().filter(|w| x_prime.contains(w)).count();
        if !(2..=ycap).contains(&k) {
            return Some(format!("Y-vertex {u} has {k} neighbors in X'"));
        }
    }
    let cap = profile.largesub_degree_cap(d);
    for &v in x_prime {
        if g.degree(v) > cap {
            return Some(format!("X'-vertex {v} has degree {}", g.degree(v)));
        }
    }
    None
}
