//! Best-first search for a reachability witness.
//!
//! States are multi-distributions and stacking moves are allowed; from a
//! proper start this reaches exactly the same vertices as proper pegging, so
//! a stacking witness is accepted as a proof. The frontier is ordered by the
//! exact weight toward the target (largest first), then by fewer pegs, then by
//! the lexicographic state encoding. States whose weight drops below one are
//! discarded since they can no longer reach the target. On trees only moves
//! toward the target are generated.
//!
//! On trees the forward search is replaced by goal regression (see
//! `regress`), since moves toward the target preserve weight and leave the
//! frontier order nothing to work with.
//!
//! The search returns a verified witness or `Unknown`, never `Unreachable`.
//! Regression is complete for moves toward the target, though, so the
//! pipeline treats an exhausted regression on a tree as a refutation.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use indexmap::IndexMap;
use num_traits::Zero;

use super::moves::multi_successors;
use super::pipeline::replay_witness;
use super::regress::{regress, Regression};
use super::state::{Distribution, MultiDistribution};
use super::{Evidence, Mode, Move, SearchBudget, TargetOutcome, Verdict};
use crate::error::Result;
use crate::graph::{distances_from, Graph};
use crate::weights::GoldenNumber;
use crate::Vertex;

struct Entry {
    weight: GoldenNumber,
    approx: f64,
    pegs: u32,
    state: MultiDistribution,
    index: usize,
}

impl Entry {
    fn weight_cmp(&self, other: &Self) -> Ordering {
        if self.weight == other.weight {
            return Ordering::Equal;
        }
        if (self.approx - other.approx).abs() > 1e-9 * (1.0 + self.approx.abs()) {
            return self.approx.total_cmp(&other.approx);
        }
        self.weight.cmp(&other.weight)
    }
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    // BinaryHeap pops the maximum: heavier first, then fewer pegs, then the
    // lexicographically smaller state.
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight_cmp(other)
            .then_with(|| other.pegs.cmp(&self.pegs))
            .then_with(|| other.state.cmp(&self.state))
    }
}

pub fn witness_search(g: &Graph, d: &Distribution, t: Vertex, budget: SearchBudget) -> Result<TargetOutcome> {
    let mut out = search_witness(g, d, t, budget)?;
    if out.verdict.is_unreachable() {
        out.verdict = Verdict::Unknown;
    }
    Ok(out)
}

/// Like [`witness_search`], but on trees an exhausted regression comes back
/// as `Unreachable`.
pub(crate) fn search_witness(g: &Graph, d: &Distribution, t: Vertex, budget: SearchBudget) -> Result<TargetOutcome> {
    g.check_vertex(t)?;
    if d.contains(t) {
        return Ok(TargetOutcome {
            verdict: Verdict::Reachable { witness: vec![] },
            states: 0,
        });
    }
    if g.is_tree() {
        return tree_witness(g, d, t, budget);
    }
    let dist = distances_from(g, t)?;
    let vertex_weight: Vec<GoldenNumber> = dist.iter().map(|&k| GoldenNumber::omega_pow(k)).collect();
    let vertex_approx: Vec<f64> = vertex_weight.iter().map(GoldenNumber::to_f64).collect();
    let one = num_traits::One::one();

    let start = d.to_multi();
    let start_weight: GoldenNumber = d.iter().map(|v| &vertex_weight[v]).sum();
    let mut seen: IndexMap<MultiDistribution, (usize, Option<Move>)> = IndexMap::new();
    seen.insert(start.clone(), (usize::MAX, None));
    let mut heap = BinaryHeap::new();
    if start_weight >= one {
        heap.push(Entry {
            approx: start_weight.to_f64(),
            weight: start_weight,
            pegs: start.total(),
            state: start,
            index: 0,
        });
    }

    let mut expansions = 0;
    while let Some(entry) = heap.pop() {
        if expansions >= budget.max_expansions {
            break;
        }
        expansions += 1;
        for (mv, next) in multi_successors(g, &entry.state, Mode::Stacking, |_| true) {
            if seen.contains_key(&next) {
                continue;
            }
            if seen.len() >= budget.max_states {
                return Ok(unknown(seen.len()));
            }
            let mut weight = entry.weight.clone();
            weight -= &vertex_weight[mv.from];
            weight -= &vertex_weight[mv.over];
            weight += &vertex_weight[mv.to];
            let (index, _) = seen.insert_full(next.clone(), (entry.index, Some(mv)));
            if next.count(t) > 0 {
                let witness = rebuild(&seen, index);
                replay_witness(g, d, &witness, t, Mode::Stacking)?;
                return Ok(TargetOutcome {
                    verdict: Verdict::Reachable { witness },
                    states: seen.len(),
                });
            }
            if weight < one || weight.is_zero() {
                continue;
            }
            let approx =
                entry.approx - vertex_approx[mv.from] - vertex_approx[mv.over] + vertex_approx[mv.to];
            heap.push(Entry {
                weight,
                approx,
                pegs: next.total(),
                state: next,
                index,
            });
        }
    }
    Ok(unknown(seen.len()))
}

fn tree_witness(g: &Graph, d: &Distribution, t: Vertex, budget: SearchBudget) -> Result<TargetOutcome> {
    let verdict = match regress(g, d, t, budget.max_expansions) {
        Regression::Found { witness, expansions } => {
            replay_witness(g, d, &witness, t, Mode::Stacking)?;
            return Ok(TargetOutcome {
                states: expansions,
                verdict: Verdict::Reachable { witness },
            });
        }
        Regression::Exhausted { expansions } => (
            Verdict::Unreachable {
                evidence: Evidence::ExhaustedStateSpace,
            },
            expansions,
        ),
        Regression::OutOfBudget { expansions } => (Verdict::Unknown, expansions),
    };
    Ok(TargetOutcome {
        verdict: verdict.0,
        states: verdict.1,
    })
}

fn unknown(states: usize) -> TargetOutcome {
    TargetOutcome {
        verdict: Verdict::Unknown,
        states,
    }
}

fn rebuild(seen: &IndexMap<MultiDistribution, (usize, Option<Move>)>, mut index: usize) -> Vec<Move> {
    let mut moves = Vec::new();
    while let Some((_, (parent, Some(mv)))) = seen.get_index(index) {
        moves.push(*mv);
        index = *parent;
    }
    moves.reverse();
    moves
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_family, FamilySpec};

    #[test]
    fn trivial_and_zero_budget() {
        let g = build_family(&FamilySpec::Path(4)).unwrap();
        let d = Distribution::from_vertices([1, 2]);
        let hit = witness_search(&g, &d, 2, SearchBudget::default()).unwrap();
        assert_eq!(hit.verdict, Verdict::Reachable { witness: vec![] });
        let none = witness_search(&g, &d, 3, SearchBudget::new(10, 0)).unwrap();
        assert!(none.verdict.is_unknown());
        let found = witness_search(&g, &d, 3, SearchBudget::default()).unwrap();
        assert_eq!(found.verdict.witness().unwrap(), &[Move::jump(1, 2, 3)]);
    }

    #[test]
    fn trees_are_decided_internally() {
        let g = build_family(&FamilySpec::Star(5)).unwrap();
        let d = Distribution::from_vertices([1, 2, 3, 4]);
        assert!(witness_search(&g, &d, 0, SearchBudget::default()).unwrap().verdict.is_unknown());
        assert_eq!(
            search_witness(&g, &d, 0, SearchBudget::default()).unwrap().verdict,
            Verdict::Unreachable {
                evidence: Evidence::ExhaustedStateSpace
            }
        );
    }

    #[test]
    fn regression_agrees_with_exhaustive_search_on_trees() {
        use crate::engine::reach_target_exhaustive;
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for n in 2..=11 {
            for _ in 0..25 {
                let g = crate::graph::generate::random_tree(n, &mut rng);
                let d: Distribution = (0..n).filter(|_| rng.gen_bool(0.6)).collect();
                for t in 0..n {
                    let fast = search_witness(&g, &d, t, SearchBudget::default()).unwrap();
                    let slow = reach_target_exhaustive(&g, &d, t, SearchBudget::unlimited()).unwrap();
                    assert_eq!(
                        fast.verdict.is_reachable(),
                        slow.verdict.is_reachable(),
                        "n={n} t={t} d={:?} edges={:?}",
                        d.to_vec(),
                        g.edges().collect::<Vec<_>>()
                    );
                    assert!(!fast.verdict.is_unknown());
                }
            }
        }
    }

    #[test]
    fn cycles_never_claim_unreachable() {
        let g = crate::graph::generate::cycle(6);
        let d = Distribution::from_vertices([0, 3]);
        assert!(witness_search(&g, &d, 1, SearchBudget::default()).unwrap().verdict.is_unknown());
        let d = Distribution::from_vertices([0, 1, 3]);
        assert!(witness_search(&g, &d, 5, SearchBudget::default()).unwrap().verdict.is_reachable());
    }
}
