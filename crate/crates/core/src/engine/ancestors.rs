use std::collections::BTreeSet;

use super::moves::{check_move, Move};
use super::state::{Distribution, MultiDistribution};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::Vertex;

/// Final pegs of a replayed move sequence with the initial pegs each one
/// descends from. Stacked pegs are tracked individually.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AncestorReplay {
    pub final_distribution: MultiDistribution,
    /// `(vertex, ancestors)` for every final peg, by vertex then age.
    pub pegs: Vec<(Vertex, BTreeSet<Vertex>)>,
}

impl AncestorReplay {
    pub fn ancestors_at(&self, v: Vertex) -> impl Iterator<Item = &BTreeSet<Vertex>> {
        self.pegs.iter().filter(move |(u, _)| *u == v).map(|(_, a)| a)
    }
}

/// Replays `moves` from `d0` tracking ancestors: an untouched peg is its own
/// ancestor, and a peg created by a move inherits the union of the ancestors
/// of the two pegs it consumed. When several pegs share a vertex the most
/// recently placed one moves first.
pub fn replay_with_ancestors(g: &Graph, d0: &Distribution, moves: &[Move]) -> Result<AncestorReplay> {
    if let Some(v) = d0.max_vertex() {
        g.check_vertex(v)?;
    }
    let mut counts = d0.to_multi();
    let mut stacks: Vec<Vec<BTreeSet<Vertex>>> = vec![Vec::new(); g.vertex_count()];
    for v in d0.iter() {
        stacks[v].push(BTreeSet::from([v]));
    }
    for (index, m) in moves.iter().enumerate() {
        check_move(g, &counts, m).map_err(|e| Error::IllegalMoveAt {
            index,
            source: Box::new(e),
        })?;
        let mut a = stacks[m.from].pop().expect("count checked");
        let b = stacks[m.over].pop().expect("count checked");
        a.extend(b);
        stacks[m.to].push(a);
        counts.take(m.from);
        counts.take(m.over);
        counts.add(m.to, 1);
    }
    let pegs = stacks
        .into_iter()
        .enumerate()
        .flat_map(|(v, stack)| stack.into_iter().map(move |a| (v, a)))
        .collect();
    Ok(AncestorReplay {
        final_distribution: counts,
        pegs,
    })
}
