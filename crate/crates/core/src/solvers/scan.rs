use serde::{Deserialize, Serialize};

use super::optimal_pegging_number;
use crate::engine::SearchBudget;
use crate::error::{Error, Result};
use crate::graph::{leaves, Graph};
use crate::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeafScanRow {
    pub leaf: Vertex,
    pub p_before: Option<usize>,
    pub p_after: Option<usize>,
    /// Deleting the leaf made the optimal-pegging number larger.
    pub increased: bool,
}

/// `p(T)` against `p(T − l)` for every leaf `l` of a tree.
pub fn leaf_removal_scan(g: &Graph, budget: SearchBudget) -> Result<Vec<LeafScanRow>> {
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    if g.vertex_count() < 3 {
        return Err(Error::OutOfRange("leaf scan needs at least 3 vertices".into()));
    }
    let before = optimal_pegging_number(g, budget)?.value;
    leaves(g)
        .into_iter()
        .map(|leaf| {
            let (smaller, _) = g.without_vertex(leaf)?;
            let after = optimal_pegging_number(&smaller, budget)?.value;
            Ok(LeafScanRow {
                leaf,
                p_before: before,
                p_after: after,
                increased: matches!((before, after), (Some(b), Some(a)) if a > b),
            })
        })
        .collect()
}
