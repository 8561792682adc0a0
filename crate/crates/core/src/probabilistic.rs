//! Randomized building blocks: Bernoulli subset sampling, the
//! right-neighbor pruning that turns samples into independent sets, the
//! retry loop that replaces expectation arguments, and a Moser–Tardos
//! resampler for systems of bad events.

use crate::graph::{DegeneracyOrdering, Graph, VertexSet};
use crate::rng::{RandomSource, Stream};
use crate::Result;

/// Each element kept independently with probability `p`.
pub fn bernoulli_subset(universe: &VertexSet, p: f64, stream: &mut Stream) -> VertexSet {
    universe
        .iter()
        .copied()
        .filter(|_| stream.bernoulli(p))
        .collect()
}

/// The subset of `s` whose members have no later-ordered neighbor inside
/// the output, computed by one right-to-left pass. The result is always an
/// independent set: of two adjacent kept vertices the earlier one would
/// see the later, which is checked and enforced.
pub fn right_neighbor_prune(s: &VertexSet, ord: &DegeneracyOrdering, g: &Graph) -> VertexSet {
    let mut members: Vec<usize> = s.iter().copied().collect();
    members.sort_by_key(|&v| ord.position[v]);
    let mut kept = VertexSet::new();
    for &v in members.iter().rev() {
        let has_kept_right = g
            .neighbors(v)
            .iter()
            .any(|&w| kept.contains(&w) && ord.position[w] > ord.position[v]);
        if !has_kept_right {
            kept.insert(v);
        }
    }
    for &u in &kept {
        for &w in g.neighbors(u) {
            assert!(!kept.contains(&w), "pruned set must be independent");
        }
    }
    kept
}

/// A sample accepted by [`retry_expectation`], with its trial index, score,
/// and the trial log.
#[derive(Debug, Clone)]
pub struct RetryOutcome<T> {
    pub value: T,
    pub trial: usize,
    pub score: f64,
    pub log: Vec<String>,
}

/// Draw samples until one scores at least `floor`; the paper-style
/// "there is a choice where ..." steps all run through here. Trial `k`
/// draws from the sub-stream `(label, k)`, so outcomes are reproducible
/// and independent of how many trials earlier runs needed.
pub fn retry_expectation<T>(
    mut sampler: impl FnMut(usize, &mut Stream) -> T,
    score: impl Fn(&T) -> f64,
    floor: f64,
    max_trials: usize,
    rng: &RandomSource,
    label: &str,
) -> Result<RetryOutcome<T>> {
    if max_trials == 0 {
        return Err(crate::Error::InvalidInput("need max_trials >= 1".into()));
    }
    let mut log = Vec::new();
    let mut best = f64::NEG_INFINITY;
    for trial in 0..max_trials {
        let mut stream = rng.stream(label, trial as u64);
        let value = sampler(trial, &mut stream);
        let s = score(&value);
        let accepted = s >= floor;
        log.push(format!(
            "trial {} | score {} | {}",
            trial + 1,
            s,
            if accepted { "accepted" } else { "rejected" }
        ));
        if accepted {
            return Ok(RetryOutcome {
                value,
                trial,
                score: s,
                log,
            });
        }
        best = best.max(s);
    }
    Err(crate::Error::TrialsExhausted(format!(
        "{label}: no trial reached floor {floor} in {max_trials} trials (best score {best})"
    )))
}

/// One bad event over indexed Bernoulli variables. `predicate` returns
/// true when the event HOLDS (is violated) under an assignment; it must
/// read only the variables in `scope`.
pub struct Event {
    pub name: String,
    pub scope: Vec<usize>,
    pub predicate: Box<dyn Fn(&[bool]) -> bool>,
}

/// Variables with their keep-probabilities plus the events to avoid.
/// Two events depend on each other exactly when their scopes intersect.
pub struct EventSystem {
    pub probs: Vec<f64>,
    pub events: Vec<Event>,
}

impl EventSystem {
    /// Maximum number of events any single event shares a variable with
    /// (itself excluded): the dependency degree of the avoidance condition.
    pub fn dependency_degree(&self) -> usize {
        let nv = self.probs.len();
        let mut by_var: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for (i, e) in self.events.iter().enumerate() {
            for &v in &e.scope {
                by_var[v].push(i);
            }
        }
        let mut best = 0;
        for (i, e) in self.events.iter().enumerate() {
            let mut peers = std::collections::BTreeSet::new();
            for &v in &e.scope {
                peers.extend(by_var[v].iter().copied());
            }
            peers.remove(&i);
            best = best.max(peers.len());
        }
        best
    }

    /// Lowest-index violated event, if any.
    pub fn first_violated(&self, assignment: &[bool]) -> Option<usize> {
        self.events
            .iter()
            .position(|e| (e.predicate)(assignment))
    }

    pub fn all_violated(&self, assignment: &[bool]) -> Vec<usize> {
        self.events
            .iter()
            .enumerate()
            .filter_map(|(i, e)| (e.predicate)(assignment).then_some(i))
            .collect()
    }
}

#[derive(Debug, Clone)]
pub enum LllOutcome {
    /// Assignment violating no event, with the number of resampling steps
    /// it took.
    Satisfied {
        assignment: Vec<bool>,
        resamples: usize,
    },
    /// Round budget ran out; the partial assignment and the currently
    /// violated events are returned for diagnosis.
    Exhausted {
        assignment: Vec<bool>,
        violated: Vec<usize>,
    },
}

/// Moser–Tardos resampling: sample every variable, then repeatedly
/// resample the scope of the lowest-index violated event until no event
/// holds or the round budget runs out.
pub fn lll_resample(sys: &EventSystem, rng: &RandomSource, max_rounds: usize) -> LllOutcome {
    let mut stream = rng.stream("lll", 0);
    let mut assignment: Vec<bool> = sys.probs.iter().map(|&p| stream.bernoulli(p)).collect();
    let mut resamples = 0usize;
    loop {
        match sys.first_violated(&assignment) {
            None => {
                return LllOutcome::Satisfied {
                    assignment,
                    resamples,
                }
            }
            Some(idx) => {
                if resamples >= max_rounds {
                    let violated = sys.all_violated(&assignment);
                    return LllOutcome::Exhausted {
                        assignment,
                        violated,
                    };
                }
                for &v in &sys.events[idx].scope {
                    assignment[v] = stream.bernoulli(sys.probs[v]);
                }
                resamples += 1;
            }
        }
    }
}

/// Diagnostic line for the avoidance condition `e * p * (dep + 1) <= 1`;
/// reported, never required.
pub fn lll_condition_report(sys: &EventSystem, p_max: f64) -> String {
    let dep = sys.dependency_degree();
    let value = std::f64::consts::E * p_max * (dep + 1) as f64;
    format!(
        "lll condition: e*p*(dep+1) = {value:.4} with p <= {p_max}, dependency degree {dep} ({})",
        if value <= 1.0 { "holds" } else { "not satisfied" }
    )
}

/// 3-SAT clause as (variable, wanted-sign) literals; used by tests and the
/// acceptance suite to drive the resampler in its classical regime.
pub fn sat_event_system(num_vars: usize, clauses: &[Vec<(usize, bool)>]) -> EventSystem {
    let events = clauses
        .iter()
        .enumerate()
        .map(|(i, clause)| {
            let clause = clause.clone();
            Event {
                name: format!("clause{i}"),
                scope: clause.iter().map(|&(v, _)| v).collect(),
                predicate: Box::new(move |assign: &[bool]| {
                    clause.iter().all(|&(v, sign)| assign[v] != sign)
                }),
            }
        })
        .collect();
    EventSystem {
        probs: vec![0.5; num_vars],
        events,
    }
}
