//! Game mechanics and reachability.
//!
//! Three move sets are supported: proper pegging, stacking (landing on an
//! occupied vertex is allowed) and peggling (stacking plus pebbling). From a
//! proper start all three reach the same vertices, which lets the witness
//! search work in the more permissive stacking semantics.
//!
//! Every search reports a three-valued [`Verdict`]; running out of budget is
//! always `Unknown`, never `Unreachable`.

mod ancestors;
mod moves;
mod pipeline;
mod regress;
mod search;
mod state;
mod witness;

use serde::{Deserialize, Serialize};

pub use ancestors::{replay_with_ancestors, AncestorReplay};
pub use moves::{apply_move, apply_move_multi, check_move, legal_moves, Mode, Move, MoveKind, Pegs};
pub use pipeline::{query_target, replay_witness};
pub use search::{reach_set, reach_target_exhaustive, reach_target_tree_directed};
pub(crate) use search::cover_set;
pub use state::{Distribution, MultiDistribution};
pub use witness::witness_search;

use crate::weights::GoldenNumber;
use crate::Vertex;

/// Search limits. `max_states` bounds the memo table, `max_expansions` the
/// number of states whose successors are generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_states: usize,
    pub max_expansions: usize,
}

impl SearchBudget {
    pub const DEFAULT_STATES: usize = 1_000_000;
    pub const DEFAULT_EXPANSIONS: usize = 100_000;

    pub fn new(max_states: usize, max_expansions: usize) -> Self {
        SearchBudget {
            max_states,
            max_expansions,
        }
    }

    pub fn unlimited() -> Self {
        SearchBudget::new(usize::MAX, usize::MAX)
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget::new(Self::DEFAULT_STATES, Self::DEFAULT_EXPANSIONS)
    }
}

/// Why a vertex is known to be unreachable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Evidence {
    /// `w_t(D) < 1`; the exact weight is attached.
    WeightCertificate { weight: GoldenNumber },
    /// Every state reachable from `D` was explored.
    ExhaustedStateSpace,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Reachable { witness: Vec<Move> },
    Unreachable { evidence: Evidence },
    Unknown,
}

impl Verdict {
    pub fn is_reachable(&self) -> bool {
        matches!(self, Verdict::Reachable { .. })
    }

    pub fn is_unreachable(&self) -> bool {
        matches!(self, Verdict::Unreachable { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown)
    }

    pub fn status(&self) -> &'static str {
        match self {
            Verdict::Reachable { .. } => "reachable",
            Verdict::Unreachable { .. } => "unreachable",
            Verdict::Unknown => "unknown",
        }
    }

    pub fn witness(&self) -> Option<&[Move]> {
        match self {
            Verdict::Reachable { witness } => Some(witness),
            _ => None,
        }
    }

    /// Serializable record for vertex `v`.
    pub fn record(&self, vertex: Vertex) -> VerdictRecord {
        VerdictRecord {
            vertex,
            status: self.status().to_string(),
            evidence: match self {
                Verdict::Unreachable { evidence } => Some(evidence.clone()),
                _ => None,
            },
            witness: self.witness().map(<[Move]>::to_vec),
        }
    }
}

/// Wire form of a verdict: `{vertex, status, evidence, witness}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub vertex: Vertex,
    pub status: String,
    pub evidence: Option<Evidence>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Move>>,
}

/// Verdict for a single target plus the number of states the search stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetOutcome {
    pub verdict: Verdict,
    pub states: usize,
}

/// Verdict for every vertex of the graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachOutcome {
    pub verdicts: Vec<Verdict>,
    pub states: usize,
    /// The whole state space was explored, or every vertex got covered.
    pub complete: bool,
}

impl ReachOutcome {
    /// Vertices with a `Reachable` verdict.
    pub fn reachable(&self) -> Distribution {
        self.verdicts
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_reachable())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn all_reachable(&self) -> bool {
        self.verdicts.iter().all(Verdict::is_reachable)
    }

    pub fn any_unknown(&self) -> bool {
        self.verdicts.iter().any(Verdict::is_unknown)
    }

    pub fn records(&self) -> Vec<VerdictRecord> {
        self.verdicts
            .iter()
            .enumerate()
            .map(|(v, verdict)| verdict.record(v))
            .collect()
    }
}
