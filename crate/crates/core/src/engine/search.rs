//! Exhaustive memoized exploration of the move graph.
//!
//! States live in an insertion-ordered map keyed by the state itself, with
//! the parent index and the move that produced them. Breadth-first search
//! walks the map in insertion order; depth-first search keeps an explicit
//! stack of indices.

use std::hash::Hash;

use indexmap::IndexMap;

use super::moves::{multi_successors, proper_successors, Pegs};
use super::pipeline::replay_witness;
use super::state::Distribution;
use super::{Evidence, Mode, Move, ReachOutcome, SearchBudget, TargetOutcome, Verdict};
use crate::error::{Error, Result};
use crate::graph::{distances_from, Graph};
use crate::Vertex;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Order {
    Breadth,
    Depth,
}

pub(crate) struct Explorer<S> {
    states: IndexMap<S, (usize, Option<Move>)>,
    pub(crate) truncated: bool,
}

impl<S: Clone + Eq + Hash> Explorer<S> {
    /// Explores from `initial` until `stop` returns true for a newly stored
    /// state, the space is exhausted, or the budget runs out. `stop` sees the
    /// index of the new state and the move that produced it (`None` for the
    /// initial state). Returns whether `stop` fired.
    fn run(
        initial: S,
        order: Order,
        budget: SearchBudget,
        mut successors: impl FnMut(&S) -> Vec<(Move, S)>,
        mut stop: impl FnMut(usize, &S, Option<&Move>) -> bool,
    ) -> (Self, bool) {
        let mut states = IndexMap::new();
        states.insert(initial.clone(), (usize::MAX, None));
        let mut ex = Explorer {
            states,
            truncated: false,
        };
        if stop(0, &initial, None) {
            return (ex, true);
        }
        let mut stack = vec![0usize];
        let mut cursor = 0usize;
        let mut expansions = 0usize;
        loop {
            let current = match order {
                Order::Breadth if cursor < ex.states.len() => cursor,
                Order::Depth => match stack.pop() {
                    Some(i) => i,
                    None => break,
                },
                _ => break,
            };
            cursor += 1;
            if expansions >= budget.max_expansions {
                ex.truncated = true;
                break;
            }
            expansions += 1;
            let state = ex.states.get_index(current).expect("index in range").0.clone();
            let mut next_batch = Vec::new();
            for (mv, next) in successors(&state) {
                if ex.states.contains_key(&next) {
                    continue;
                }
                if ex.states.len() >= budget.max_states {
                    ex.truncated = true;
                    return (ex, false);
                }
                let (idx, _) = ex.states.insert_full(next.clone(), (current, Some(mv)));
                if stop(idx, &next, Some(&mv)) {
                    return (ex, true);
                }
                next_batch.push(idx);
            }
            if order == Order::Depth {
                // Pop in sorted-move order.
                stack.extend(next_batch.into_iter().rev());
            }
        }
        (ex, false)
    }

    pub(crate) fn len(&self) -> usize {
        self.states.len()
    }

    fn witness(&self, mut idx: usize) -> Vec<Move> {
        let mut moves = Vec::new();
        while let Some((_, (parent, mv))) = self.states.get_index(idx) {
            match mv {
                Some(m) => moves.push(*m),
                None => break,
            }
            idx = *parent;
        }
        moves.reverse();
        moves
    }
}

fn check_distribution(g: &Graph, d: &Distribution) -> Result<()> {
    match d.max_vertex() {
        Some(v) => g.check_vertex(v),
        None => Ok(()),
    }
}

/// Coverage-only exploration used by the solvers: the set of vertices
/// covered by some explored state, whether exploration was complete, and the
/// number of stored states. Stops early once every vertex is covered.
pub(crate) fn cover_set(g: &Graph, d: &Distribution, budget: SearchBudget) -> (Distribution, bool, usize) {
    let n = g.vertex_count();
    let mut covered = d.clone();
    let mut count = covered.len();
    let (ex, all) = Explorer::run(
        d.clone(),
        Order::Breadth,
        budget,
        |s| proper_successors(g, s, |_| true),
        |_, _, mv| {
            if let Some(m) = mv {
                if covered.insert(m.to) {
                    count += 1;
                }
            }
            count == n
        },
    );
    (covered, all || !ex.truncated, ex.len())
}

/// Reach of `d` under `mode`, with a witness for every reachable vertex.
pub fn reach_set(g: &Graph, d: &Distribution, mode: Mode, budget: SearchBudget) -> Result<ReachOutcome> {
    check_distribution(g, d)?;
    let n = g.vertex_count();
    let mut first: Vec<Option<usize>> = vec![None; n];
    for v in d.iter() {
        first[v] = Some(0);
    }
    let mut count = d.len();
    let mut note = |idx: usize, mv: Option<&Move>| {
        if let Some(m) = mv {
            if first[m.to].is_none() {
                first[m.to] = Some(idx);
                count += 1;
            }
        }
        count == n
    };
    let (verdicts, states, complete) = match mode {
        Mode::Proper => {
            let (ex, all) = Explorer::run(
                d.clone(),
                Order::Breadth,
                budget,
                |s| proper_successors(g, s, |_| true),
                |i, _, m| note(i, m),
            );
            let complete = all || !ex.truncated;
            (verdicts_from(&ex, &first, complete), ex.len(), complete)
        }
        Mode::Stacking | Mode::Peggling => {
            let (ex, all) = Explorer::run(
                d.to_multi(),
                Order::Breadth,
                budget,
                |s| multi_successors(g, s, mode, |_| true),
                |i, _, m| note(i, m),
            );
            let complete = all || !ex.truncated;
            (verdicts_from(&ex, &first, complete), ex.len(), complete)
        }
    };
    for (v, verdict) in verdicts.iter().enumerate() {
        if let Verdict::Reachable { witness } = verdict {
            replay_witness(g, d, witness, v, mode)?;
        }
    }
    Ok(ReachOutcome {
        verdicts,
        states,
        complete,
    })
}

fn verdicts_from<S: Clone + Eq + Hash>(ex: &Explorer<S>, first: &[Option<usize>], complete: bool) -> Vec<Verdict> {
    first
        .iter()
        .map(|f| match f {
            Some(idx) => Verdict::Reachable {
                witness: ex.witness(*idx),
            },
            None if complete => Verdict::Unreachable {
                evidence: Evidence::ExhaustedStateSpace,
            },
            None => Verdict::Unknown,
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn single_target<S, F>(
    g: &Graph,
    d: &Distribution,
    initial: S,
    t: Vertex,
    order: Order,
    budget: SearchBudget,
    mode: Mode,
    successors: F,
) -> Result<TargetOutcome>
where
    S: Clone + Eq + Hash + Pegs,
    F: FnMut(&S) -> Vec<(Move, S)>,
{
    let (ex, found) = Explorer::run(initial, order, budget, successors, |_, s, _| s.pegs_at(t) > 0);
    let verdict = if found {
        let idx = ex.len() - 1;
        let witness = ex.witness(idx);
        replay_witness(g, d, &witness, t, mode)?;
        Verdict::Reachable { witness }
    } else if ex.truncated {
        Verdict::Unknown
    } else {
        Verdict::Unreachable {
            evidence: Evidence::ExhaustedStateSpace,
        }
    };
    Ok(TargetOutcome {
        verdict,
        states: ex.len(),
    })
}

/// Exhaustive proper-mode search for a single target on any graph.
pub fn reach_target_exhaustive(g: &Graph, d: &Distribution, t: Vertex, budget: SearchBudget) -> Result<TargetOutcome> {
    check_distribution(g, d)?;
    g.check_vertex(t)?;
    single_target(g, d, d.clone(), t, Order::Breadth, budget, Mode::Proper, |s| {
        proper_successors(g, s, |_| true)
    })
}

/// Exhaustive search on a tree that only expands moves bringing a peg closer
/// to `t`. On trees this loses no reachable targets, and it prunes most of
/// the state space.
pub fn reach_target_tree_directed(
    g: &Graph,
    d: &Distribution,
    t: Vertex,
    budget: SearchBudget,
) -> Result<TargetOutcome> {
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    check_distribution(g, d)?;
    let dist = distances_from(g, t)?;
    single_target(g, d, d.clone(), t, Order::Depth, budget, Mode::Proper, |s| {
        proper_successors(g, s, |m| dist[m.to] < dist[m.from])
    })
}
