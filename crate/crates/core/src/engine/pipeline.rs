use super::moves::{apply_move_multi, Mode};
use super::search::{reach_target_exhaustive, reach_target_tree_directed};
use super::state::Distribution;
use super::witness::search_witness;
use super::{Evidence, Move, SearchBudget, TargetOutcome, Verdict};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::weights::weight_unreachability_certificate;
use crate::Vertex;

/// Replays `witness` from `d` and checks that it ends with a peg on `t`
/// using only moves that `mode` allows.
pub fn replay_witness(g: &Graph, d: &Distribution, witness: &[Move], t: Vertex, mode: Mode) -> Result<()> {
    let mut state = d.to_multi();
    for (index, m) in witness.iter().enumerate() {
        if !mode.allows(m.kind) {
            return Err(Error::IllegalMoveAt {
                index,
                source: Box::new(Error::IllegalMove {
                    from: m.from,
                    over: m.over,
                    to: m.to,
                    reason: "move kind not allowed in this mode",
                }),
            });
        }
        state = apply_move_multi(g, &state, m).map_err(|e| Error::IllegalMoveAt {
            index,
            source: Box::new(e),
        })?;
    }
    if state.count(t) == 0 {
        return Err(Error::VerificationFailed(format!(
            "witness of {} moves does not end on vertex {t}",
            witness.len()
        )));
    }
    Ok(())
}

/// Decides whether `t` is reachable from `d`:
///
/// 1. `t ∈ D` is trivially reachable;
/// 2. a weight below one refutes it;
/// 3. witness search (stacking moves allowed) tries to prove it; on trees
///    its goal regression covers every derivation by moves toward `t`, so
///    running out of options there refutes `t`;
/// 4. otherwise an exhaustive search runs within the budget, directed
///    toward `t` on trees and unrestricted elsewhere.
pub fn query_target(g: &Graph, d: &Distribution, t: Vertex, budget: SearchBudget) -> Result<TargetOutcome> {
    g.check_vertex(t)?;
    if d.contains(t) {
        return Ok(TargetOutcome {
            verdict: Verdict::Reachable { witness: vec![] },
            states: 0,
        });
    }
    if let Some(cert) = weight_unreachability_certificate(g, d, t)? {
        return Ok(TargetOutcome {
            verdict: Verdict::Unreachable {
                evidence: Evidence::WeightCertificate { weight: cert.weight },
            },
            states: 0,
        });
    }
    let guided = search_witness(g, d, t, budget)?;
    if !guided.verdict.is_unknown() {
        return Ok(guided);
    }
    let mut exhaustive = if g.is_tree() {
        reach_target_tree_directed(g, d, t, budget)?
    } else {
        reach_target_exhaustive(g, d, t, budget)?
    };
    exhaustive.states += guided.states;
    Ok(exhaustive)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_family, FamilySpec};

    #[test]
    fn pipeline_uses_weight_certificate_first() {
        let g = build_family(&FamilySpec::Path(4)).unwrap();
        let d = Distribution::from_vertices([0]);
        let out = query_target(&g, &d, 3, SearchBudget::default()).unwrap();
        match out.verdict {
            Verdict::Unreachable {
                evidence: Evidence::WeightCertificate { weight },
            } => assert_eq!(weight, crate::weights::GoldenNumber::omega_pow(3)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn pipeline_falls_back_to_exhaustive() {
        // Star leaves have weight 4ω ≥ 1 at the centre but cannot move.
        let g = build_family(&FamilySpec::Star(5)).unwrap();
        let d = Distribution::from_vertices([1, 2, 3, 4]);
        let out = query_target(&g, &d, 0, SearchBudget::default()).unwrap();
        assert_eq!(
            out.verdict,
            Verdict::Unreachable {
                evidence: Evidence::ExhaustedStateSpace
            }
        );
    }

    #[test]
    fn replay_rejects_bad_witness() {
        let g = build_family(&FamilySpec::Path(3)).unwrap();
        let d = Distribution::from_vertices([0, 1]);
        assert!(replay_witness(&g, &d, &[Move::jump(0, 1, 2)], 2, Mode::Proper).is_ok());
        assert!(replay_witness(&g, &d, &[Move::jump(0, 1, 2)], 0, Mode::Proper).is_err());
        assert!(matches!(
            replay_witness(&g, &d, &[Move::jump(1, 0, 2)], 2, Mode::Proper),
            Err(Error::IllegalMoveAt { index: 0, .. })
        ));
        assert!(replay_witness(&g, &d, &[Move::stack(0, 1, 2)], 2, Mode::Proper).is_err());
    }
}
