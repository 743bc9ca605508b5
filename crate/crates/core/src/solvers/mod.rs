//! Exact pegging numbers, the constructive distributions, and a few
//! experiments built on top of the engine.
//!
//! `p(G)` is the least size of a distribution that pegs `G`; `P(G)` is the
//! least `k` such that every distribution of size `k` pegs `G`. Both are
//! found by enumerating k-subsets in lexicographic rank order, split into
//! contiguous rank ranges that run in parallel. The answer is always the
//! smallest qualifying rank, so results do not depend on scheduling.

mod combos;
mod constructions;
mod probability;
mod scan;
mod verify;

use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use combos::{advance, binomial, unrank};
pub use constructions::{
    caterpillar_distribution, fibonacci_distribution, fibonacci_min_branching, lobster_distribution,
    path_optimal_distribution,
};
pub use probability::{peg_probability, ProbabilityReport, EXACT_ENUMERATION_CAP};
pub use scan::{leaf_removal_scan, LeafScanRow};
pub use verify::{verify_pegs, PegVerdict, VerifyReport};

use crate::engine::{cover_set, query_target, Distribution, SearchBudget, Verdict};
use crate::error::Result;
use crate::graph::{all_pairs_distances, leaves, Graph};
use crate::weights::{optimal_lower_bound, GoldenNumber};
use crate::Vertex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    PeggingNumber,
    OptimalPeggingNumber,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LowerBoundKind {
    WeightGreedy,
    Trivial,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub family: Option<String>,
    pub n: usize,
    pub quantity: Quantity,
    /// `None` when some query ran out of budget before the answer was pinned.
    pub value: Option<usize>,
    pub witness: Option<Distribution>,
    pub counterexample: Option<Distribution>,
    pub lower_bound: usize,
    pub lower_bound_kind: LowerBoundKind,
    pub states: usize,
    pub millis: u64,
    pub version: String,
}

impl SolveReport {
    fn new(g: &Graph, quantity: Quantity, lower_bound: usize, kind: LowerBoundKind) -> Self {
        SolveReport {
            family: g.family().map(ToString::to_string),
            n: g.vertex_count(),
            quantity,
            value: None,
            witness: None,
            counterexample: None,
            lower_bound,
            lower_bound_kind: kind,
            states: 0,
            millis: 0,
            version: crate::VERSION.to_string(),
        }
    }
}

/// Whether a distribution pegs the whole graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coverage {
    Pegs,
    /// This vertex is provably unreachable.
    Misses(Vertex),
    /// This vertex could not be decided within budget.
    Unknown(Vertex),
}

/// Decides whether `d` pegs `g`. Trees are checked target by target through
/// the query pipeline; other graphs by one exhaustive exploration.
pub fn coverage(g: &Graph, d: &Distribution, budget: SearchBudget) -> Result<(Coverage, usize)> {
    let n = g.vertex_count();
    if d.len() == n {
        return Ok((Coverage::Pegs, 0));
    }
    if g.is_tree() {
        let mut states = 0;
        let mut unknown = None;
        for t in g.vertices().filter(|&t| !d.contains(t)) {
            let out = query_target(g, d, t, budget)?;
            states += out.states;
            match out.verdict {
                Verdict::Reachable { .. } => {}
                Verdict::Unreachable { .. } => return Ok((Coverage::Misses(t), states)),
                Verdict::Unknown => {
                    unknown.get_or_insert(t);
                }
            }
        }
        return Ok((unknown.map_or(Coverage::Pegs, Coverage::Unknown), states));
    }
    let (covered, complete, states) = cover_set(g, d, budget);
    let first_missing = g.vertices().find(|&v| !covered.contains(v));
    Ok(match first_missing {
        None => (Coverage::Pegs, states),
        Some(v) if complete => (Coverage::Misses(v), states),
        Some(v) => (Coverage::Unknown(v), states),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Probe {
    Hit,
    Miss,
    Unknown,
}

#[derive(Debug, Default)]
struct ScanResult {
    hit: Option<u64>,
    first_unknown: Option<u64>,
    states: usize,
}

#[derive(Default)]
struct ChunkResult {
    start: u64,
    hit: Option<u64>,
    first_unknown: Option<u64>,
    states: usize,
}

/// Finds the smallest index in `0..total` whose probe hits. States are
/// counted over the indices up to the hit, so the total is deterministic.
fn scan(total: u64, probe: impl Fn(u64) -> Result<(Probe, usize)> + Sync) -> Result<ScanResult> {
    if total == 0 {
        return Ok(ScanResult::default());
    }
    let chunks = (rayon::current_num_threads() as u64 * 8).clamp(1, total);
    let size = total.div_ceil(chunks);
    let best = AtomicU64::new(u64::MAX);
    let parts: Vec<ChunkResult> = (0..chunks)
        .into_par_iter()
        .map(|c| -> Result<ChunkResult> {
            let start = c * size;
            let end = (start + size).min(total);
            let mut part = ChunkResult {
                start,
                ..Default::default()
            };
            for i in start..end {
                if best.load(AtomicOrdering::Relaxed) < start {
                    break;
                }
                let (outcome, states) = probe(i)?;
                part.states += states;
                match outcome {
                    Probe::Hit => {
                        part.hit = Some(i);
                        best.fetch_min(i, AtomicOrdering::Relaxed);
                        break;
                    }
                    Probe::Unknown => {
                        part.first_unknown.get_or_insert(i);
                    }
                    Probe::Miss => {}
                }
            }
            Ok(part)
        })
        .collect::<Result<_>>()?;
    let hit = parts.iter().filter_map(|p| p.hit).min();
    let limit = hit.unwrap_or(u64::MAX);
    let relevant = parts.iter().filter(|p| p.start <= limit);
    Ok(ScanResult {
        hit,
        first_unknown: relevant.clone().filter_map(|p| p.first_unknown).filter(|&u| u < limit).min(),
        states: relevant.map(|p| p.states).sum(),
    })
}

fn subset(n: usize, k: usize, rank: u64) -> Distribution {
    Distribution::from_vertices(unrank(n, k, rank))
}

/// The lower bound that seeds the p-solver: the greedy weight bound toward
/// the leaves on trees and toward every vertex otherwise, and at least two
/// once there are two vertices.
pub fn optimal_lower_bound_for(g: &Graph) -> Result<(usize, LowerBoundKind)> {
    let n = g.vertex_count();
    let trivial = n.min(2);
    let targets = if g.is_tree() {
        leaves(g)
    } else {
        g.vertices().collect()
    };
    let greedy = optimal_lower_bound(g, &targets)?;
    Ok(if trivial > greedy {
        (trivial, LowerBoundKind::Trivial)
    } else {
        (greedy, LowerBoundKind::WeightGreedy)
    })
}

/// `p(G)`, with the lexicographically first optimal distribution as witness.
pub fn optimal_pegging_number(g: &Graph, budget: SearchBudget) -> Result<SolveReport> {
    let clock = Instant::now();
    let n = g.vertex_count();
    let (lower, kind) = optimal_lower_bound_for(g)?;
    let mut report = SolveReport::new(g, Quantity::OptimalPeggingNumber, lower, kind);
    let mut uncertain = false;
    for k in lower..=n {
        let total = binomial(n, k).expect("subset count overflow");
        let res = scan(total, |i| {
            let (c, states) = coverage(g, &subset(n, k, i), budget)?;
            let probe = match c {
                Coverage::Pegs => Probe::Hit,
                Coverage::Misses(_) => Probe::Miss,
                Coverage::Unknown(_) => Probe::Unknown,
            };
            Ok((probe, states))
        })?;
        report.states += res.states;
        uncertain |= res.first_unknown.is_some();
        if let Some(hit) = res.hit {
            report.value = (!uncertain).then_some(k);
            report.witness = Some(subset(n, k, hit));
            break;
        }
    }
    report.millis = clock.elapsed().as_millis() as u64;
    Ok(report)
}

/// Candidates above this count are scanned in plain rank order instead of
/// being sorted by weight first.
pub const WEIGHT_ORDER_CAP: u64 = 1 << 20;

/// Size-k subsets ordered by their weight toward their weakest target,
/// lightest first, ties broken by rank.
fn weight_ordered(g: &Graph, k: usize, total: u64) -> Vec<u64> {
    let n = g.vertex_count();
    let dist = all_pairs_distances(g);
    let max = dist.iter().flatten().copied().max().unwrap_or(0);
    let powers: Vec<f64> = (0..=max).map(|d| GoldenNumber::omega_pow(d).to_f64()).collect();
    let mut keyed: Vec<(f64, u64)> = Vec::with_capacity(total as usize);
    let mut c = unrank(n, k, 0);
    for rank in 0..total {
        let key = (0..n)
            .map(|t| c.iter().map(|&v| powers[dist[v][t]]).sum::<f64>())
            .fold(f64::INFINITY, f64::min);
        keyed.push((key, rank));
        advance(&mut c, n);
    }
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    keyed.into_iter().map(|(_, r)| r).collect()
}

/// `P(G)`. The counterexample is a distribution of size `P(G) − 1` that
/// fails to peg; lighter candidates are tried first.
pub fn pegging_number(g: &Graph, budget: SearchBudget) -> Result<SolveReport> {
    let clock = Instant::now();
    let n = g.vertex_count();
    let optimal = optimal_pegging_number(g, budget)?;
    let start = optimal.value.unwrap_or(optimal.lower_bound);
    let mut report = SolveReport::new(g, Quantity::PeggingNumber, start, LowerBoundKind::Trivial);
    report.states = optimal.states;
    let mut uncertain = optimal.value.is_none();
    for k in start..=n {
        let total = binomial(n, k).expect("subset count overflow");
        let order = (total <= WEIGHT_ORDER_CAP).then(|| weight_ordered(g, k, total));
        let rank_of = |i: u64| order.as_ref().map_or(i, |o| o[i as usize]);
        let res = scan(total, |i| {
            let (c, states) = coverage(g, &subset(n, k, rank_of(i)), budget)?;
            let probe = match c {
                Coverage::Pegs => Probe::Miss,
                Coverage::Misses(_) => Probe::Hit,
                Coverage::Unknown(_) => Probe::Unknown,
            };
            Ok((probe, states))
        })?;
        report.states += res.states;
        match res.hit {
            Some(hit) => report.counterexample = Some(subset(n, k, rank_of(hit))),
            None => {
                uncertain |= res.first_unknown.is_some();
                report.value = (!uncertain).then_some(k);
                break;
            }
        }
    }
    report.millis = clock.elapsed().as_millis() as u64;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_family, generate, FamilySpec};

    fn family(spec: FamilySpec) -> Graph {
        build_family(&spec).unwrap()
    }

    #[test]
    fn stars() {
        let g = family(FamilySpec::Star(5));
        let p = optimal_pegging_number(&g, SearchBudget::default()).unwrap();
        assert_eq!(p.value, Some(2));
        assert_eq!(p.witness, Some(Distribution::from_vertices([0, 1])));
        let big = pegging_number(&g, SearchBudget::default()).unwrap();
        assert_eq!(big.value, Some(5));
        assert_eq!(big.counterexample, Some(Distribution::from_vertices([1, 2, 3, 4])));
    }

    #[test]
    fn paths() {
        let p7 = optimal_pegging_number(&family(FamilySpec::Path(7)), SearchBudget::default()).unwrap();
        assert_eq!(p7.value, Some(4));
        assert!(p7.lower_bound <= 4);
        let p2 = pegging_number(&family(FamilySpec::Path(2)), SearchBudget::default()).unwrap();
        assert_eq!(p2.value, Some(2));
        let p1 = optimal_pegging_number(&family(FamilySpec::Path(1)), SearchBudget::default()).unwrap();
        assert_eq!(p1.value, Some(1));
    }

    /// Brute force over every size and every subset.
    fn brute_force(g: &Graph) -> (usize, usize) {
        let n = g.vertex_count();
        let pegs = |d: &Distribution| {
            let (c, _) = coverage(g, d, SearchBudget::unlimited()).unwrap();
            c == Coverage::Pegs
        };
        let mut small = None;
        let mut big = None;
        for k in 0..=n {
            let all: Vec<bool> = (0..binomial(n, k).unwrap()).map(|r| pegs(&subset(n, k, r))).collect();
            if small.is_none() && all.iter().any(|&b| b) {
                small = Some(k);
            }
            if big.is_none() && all.iter().all(|&b| b) {
                big = Some(k);
            }
        }
        (small.unwrap(), big.unwrap())
    }

    #[test]
    fn solvers_match_brute_force() {
        let graphs = [
            family(FamilySpec::Path(4)),
            family(FamilySpec::Caterpillar(vec![1, 0, 2])),
            generate::cycle(5),
            generate::complete(4),
        ];
        for g in &graphs {
            let (small, big) = brute_force(g);
            let p = optimal_pegging_number(g, SearchBudget::default()).unwrap();
            let pp = pegging_number(g, SearchBudget::default()).unwrap();
            assert_eq!(p.value, Some(small));
            assert_eq!(pp.value, Some(big));
            assert!(p.lower_bound <= small);
        }
    }

    #[test]
    fn coverage_reports_budget_exhaustion() {
        let g = family(FamilySpec::Path(5));
        let d = Distribution::from_vertices([1, 2, 3]);
        let (c, _) = coverage(&g, &d, SearchBudget::new(0, 0)).unwrap();
        assert!(matches!(c, Coverage::Unknown(_)), "{c:?}");
        let (c, _) = coverage(&g, &d, SearchBudget::default()).unwrap();
        assert_eq!(c, Coverage::Pegs);
    }

    #[test]
    fn report_json_shape() {
        let r = optimal_pegging_number(&family(FamilySpec::Star(4)), SearchBudget::default()).unwrap();
        let json = serde_json::to_value(&r).unwrap();
        for key in [
            "family",
            "n",
            "quantity",
            "value",
            "witness",
            "counterexample",
            "lower_bound",
            "lower_bound_kind",
            "states",
            "millis",
            "version",
        ] {
            assert!(json.get(key).is_some(), "missing {key}");
        }
        assert_eq!(json["quantity"], "optimal_pegging_number");
        assert_eq!(json["family"], "star:4");
    }
}
