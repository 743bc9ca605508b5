use serde::{Deserialize, Serialize};

use super::state::{Distribution, MultiDistribution};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::Vertex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MoveKind {
    /// Jump into an empty vertex.
    Pegging,
    /// Jump onto an occupied vertex.
    Stacking,
    /// Two pegs leave one vertex, one lands on a neighbour.
    Pebbling,
}

/// Which moves a search may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Proper,
    Stacking,
    Peggling,
}

impl Mode {
    pub fn allows(self, kind: MoveKind) -> bool {
        match self {
            Mode::Proper => kind == MoveKind::Pegging,
            Mode::Stacking => kind != MoveKind::Pebbling,
            Mode::Peggling => true,
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "proper" => Ok(Mode::Proper),
            "stacking" => Ok(Mode::Stacking),
            "peggling" => Ok(Mode::Peggling),
            other => Err(format!("unknown mode {other:?}")),
        }
    }
}

/// The peg on `from` jumps over `over` and lands on `to`. For pebbling
/// moves `from == over`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Move {
    pub from: Vertex,
    pub over: Vertex,
    pub to: Vertex,
    pub kind: MoveKind,
}

impl Move {
    pub fn jump(from: Vertex, over: Vertex, to: Vertex) -> Self {
        Move {
            from,
            over,
            to,
            kind: MoveKind::Pegging,
        }
    }

    pub fn stack(from: Vertex, over: Vertex, to: Vertex) -> Self {
        Move {
            kind: MoveKind::Stacking,
            ..Move::jump(from, over, to)
        }
    }

    pub fn pebble(at: Vertex, to: Vertex) -> Self {
        Move {
            from: at,
            over: at,
            to,
            kind: MoveKind::Pebbling,
        }
    }

    fn illegal(&self, reason: &'static str) -> Error {
        Error::IllegalMove {
            from: self.from,
            over: self.over,
            to: self.to,
            reason,
        }
    }
}

/// Read access to peg counts, shared by proper and multi distributions.
pub trait Pegs {
    fn pegs_at(&self, v: Vertex) -> u32;
    fn occupied(&self) -> Vec<Vertex>;
}

impl Pegs for Distribution {
    fn pegs_at(&self, v: Vertex) -> u32 {
        u32::from(self.contains(v))
    }
    fn occupied(&self) -> Vec<Vertex> {
        self.to_vec()
    }
}

impl Pegs for MultiDistribution {
    fn pegs_at(&self, v: Vertex) -> u32 {
        self.count(v)
    }
    fn occupied(&self) -> Vec<Vertex> {
        self.iter().map(|(v, _)| v).collect()
    }
}

/// All moves legal under `mode`, sorted by `(from, over, to)`.
pub fn legal_moves<P: Pegs>(g: &Graph, pegs: &P, mode: Mode) -> Vec<Move> {
    let mut out = Vec::new();
    for over in pegs.occupied() {
        if over >= g.vertex_count() {
            continue;
        }
        let here = pegs.pegs_at(over);
        let nbrs = g.neighbors(over);
        for &from in nbrs {
            if pegs.pegs_at(from) == 0 {
                continue;
            }
            for &to in nbrs {
                if to == from {
                    continue;
                }
                if pegs.pegs_at(to) == 0 {
                    out.push(Move::jump(from, over, to));
                } else if mode != Mode::Proper {
                    out.push(Move::stack(from, over, to));
                }
            }
        }
        if mode == Mode::Peggling && here >= 2 {
            out.extend(nbrs.iter().map(|&to| Move::pebble(over, to)));
        }
    }
    out.sort_unstable_by_key(|m| (m.from, m.over, m.to));
    out
}

/// Checks that `m` is legal on `pegs`, independent of search mode.
pub fn check_move<P: Pegs>(g: &Graph, pegs: &P, m: &Move) -> Result<()> {
    let n = g.vertex_count();
    if m.from >= n || m.over >= n || m.to >= n {
        return Err(m.illegal("vertex out of range"));
    }
    if !g.has_edge(m.over, m.to) {
        return Err(m.illegal("landing vertex not adjacent to the jumped vertex"));
    }
    match m.kind {
        MoveKind::Pebbling => {
            if m.from != m.over {
                return Err(m.illegal("pebbling move must start and jump at one vertex"));
            }
            if pegs.pegs_at(m.over) < 2 {
                return Err(m.illegal("pebbling needs two pegs on the vertex"));
            }
        }
        MoveKind::Pegging | MoveKind::Stacking => {
            if m.from == m.over || m.from == m.to {
                return Err(m.illegal("jump vertices must be distinct"));
            }
            if !g.has_edge(m.from, m.over) {
                return Err(m.illegal("jumping peg not adjacent to the jumped vertex"));
            }
            if pegs.pegs_at(m.from) == 0 || pegs.pegs_at(m.over) == 0 {
                return Err(m.illegal("missing peg"));
            }
            if m.kind == MoveKind::Pegging && pegs.pegs_at(m.to) > 0 {
                return Err(m.illegal("landing vertex occupied"));
            }
        }
    }
    Ok(())
}

/// Applies a pegging move to a proper distribution.
pub fn apply_move(g: &Graph, d: &Distribution, m: &Move) -> Result<Distribution> {
    if m.kind != MoveKind::Pegging {
        return Err(m.illegal("only pegging moves keep a distribution proper"));
    }
    check_move(g, d, m)?;
    let mut next = d.clone();
    next.remove(m.from);
    next.remove(m.over);
    next.insert(m.to);
    Ok(next)
}

/// Applies any move kind to a multi-distribution.
pub fn apply_move_multi(g: &Graph, d: &MultiDistribution, m: &Move) -> Result<MultiDistribution> {
    check_move(g, d, m)?;
    let mut next = d.clone();
    next.take(m.from);
    next.take(m.over);
    next.add(m.to, 1);
    Ok(next)
}

/// Pegging successors of a proper distribution, restricted to moves accepted
/// by `keep`.
pub(crate) fn proper_successors(
    g: &Graph,
    d: &Distribution,
    keep: impl Fn(&Move) -> bool,
) -> Vec<(Move, Distribution)> {
    legal_moves(g, d, Mode::Proper)
        .into_iter()
        .filter(|m| keep(m))
        .map(|m| {
            let mut next = d.clone();
            next.remove(m.from);
            next.remove(m.over);
            next.insert(m.to);
            (m, next)
        })
        .collect()
}

pub(crate) fn multi_successors(
    g: &Graph,
    d: &MultiDistribution,
    mode: Mode,
    keep: impl Fn(&Move) -> bool,
) -> Vec<(Move, MultiDistribution)> {
    legal_moves(g, d, mode)
        .into_iter()
        .filter(|m| keep(m))
        .map(|m| {
            let mut next = d.clone();
            next.take(m.from);
            next.take(m.over);
            next.add(m.to, 1);
            (m, next)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_family, FamilySpec};

    fn path(n: usize) -> Graph {
        build_family(&FamilySpec::Path(n)).unwrap()
    }

    #[test]
    fn path_moves() {
        let g = path(3);
        let d = Distribution::from_vertices([0, 1]);
        assert_eq!(legal_moves(&g, &d, Mode::Proper), vec![Move::jump(0, 1, 2)]);
        let full = Distribution::from_vertices([0, 1, 2]);
        assert!(legal_moves(&g, &full, Mode::Proper).is_empty());
        assert_eq!(
            legal_moves(&g, &full, Mode::Stacking),
            vec![Move::stack(0, 1, 2), Move::stack(2, 1, 0)]
        );
    }

    #[test]
    fn star_leaves_are_stuck() {
        let g = build_family(&FamilySpec::Star(5)).unwrap();
        let d = Distribution::from_vertices([1, 2]);
        assert!(legal_moves(&g, &d, Mode::Proper).is_empty());
        assert!(legal_moves(&g, &d, Mode::Peggling).is_empty());
    }

    #[test]
    fn applying_moves() {
        let g = path(3);
        let d = Distribution::from_vertices([0, 1]);
        assert_eq!(
            apply_move(&g, &d, &Move::jump(0, 1, 2)).unwrap(),
            Distribution::from_vertices([2])
        );
        let full = MultiDistribution::from_vertices([0, 1, 2]);
        let stacked = apply_move_multi(&g, &full, &Move::stack(0, 1, 2)).unwrap();
        assert_eq!(stacked, MultiDistribution::from_counts([(2, 2)]));
        let pebbled = apply_move_multi(&g, &stacked, &Move::pebble(2, 1)).unwrap();
        assert_eq!(pebbled, MultiDistribution::from_vertices([1]));
        assert_eq!(
            legal_moves(&g, &stacked, Mode::Peggling),
            vec![Move::pebble(2, 1)]
        );
    }

    #[test]
    fn illegal_moves_are_rejected() {
        let g = path(4);
        let d = Distribution::from_vertices([0, 1, 2]);
        assert!(apply_move(&g, &d, &Move::jump(0, 1, 2)).is_err());
        assert!(apply_move(&g, &d, &Move::jump(0, 2, 3)).is_err());
        assert!(apply_move(&g, &d, &Move::jump(2, 3, 2)).is_err());
        assert!(apply_move(&g, &d, &Move::stack(0, 1, 2)).is_err());
        let single = MultiDistribution::from_vertices([1]);
        assert!(apply_move_multi(&g, &single, &Move::pebble(1, 2)).is_err());
    }

    #[test]
    fn every_move_removes_one_peg() {
        for g in crate::graph::generate::corpus(9) {
            let d = MultiDistribution::from_vertices(g.vertices().step_by(2).chain([1]));
            for mode in [Mode::Proper, Mode::Stacking, Mode::Peggling] {
                for m in legal_moves(&g, &d, mode) {
                    assert!(mode.allows(m.kind));
                    let next = apply_move_multi(&g, &d, &m).unwrap();
                    assert_eq!(next.total() + 1, d.total());
                }
            }
        }
    }
}
