use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::{query_target, Distribution, SearchBudget, VerdictRecord};
use crate::error::Result;
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PegVerdict {
    Pegs,
    DoesNotPeg,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub verdict: PegVerdict,
    pub vertices: Vec<VerdictRecord>,
    pub states: usize,
}

impl VerifyReport {
    pub fn unreachable(&self) -> Vec<usize> {
        self.vertices
            .iter()
            .filter(|r| r.status == "unreachable")
            .map(|r| r.vertex)
            .collect()
    }
}

/// Runs the query pipeline for every vertex. Any unreachable vertex means
/// the distribution does not peg the graph; otherwise any undecided vertex
/// leaves the answer unknown.
pub fn verify_pegs(g: &Graph, d: &Distribution, budget: SearchBudget) -> Result<VerifyReport> {
    if let Some(v) = d.max_vertex() {
        g.check_vertex(v)?;
    }
    let outcomes = g
        .vertices()
        .into_par_iter()
        .map(|t| query_target(g, d, t, budget).map(|o| (t, o)))
        .collect::<Result<Vec<_>>>()?;
    let states = outcomes.iter().map(|(_, o)| o.states).sum();
    let verdict = if outcomes.iter().any(|(_, o)| o.verdict.is_unreachable()) {
        PegVerdict::DoesNotPeg
    } else if outcomes.iter().any(|(_, o)| o.verdict.is_unknown()) {
        PegVerdict::Unknown
    } else {
        PegVerdict::Pegs
    };
    Ok(VerifyReport {
        verdict,
        vertices: outcomes.iter().map(|(t, o)| o.verdict.record(*t)).collect(),
        states,
    })
}
