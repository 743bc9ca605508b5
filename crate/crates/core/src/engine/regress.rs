//! Goal regression on trees.
//!
//! On a tree rooted at the target, a peg reaches `x` through moves toward the
//! target only, and every such move is `g → c → x` with `c` a child of `x`
//! and `g` a child of `c`. Working backward, a demand for a peg on `x` is met
//! either by an original peg on `x` or by one demand on `c` plus one on `g`,
//! met from disjoint original pegs. Demands are resolved top-down in BFS
//! order, so once a vertex is processed its demand never changes again.
//!
//! Demand weight is preserved by every regression step, so a subtree whose
//! demand weight exceeds the weight of its pegs is a dead end. So is one
//! holding more demands than pegs.

use std::collections::HashSet;

use super::state::Distribution;
use super::{Move, MoveKind};
use crate::graph::{Graph, RootedView};
use crate::Vertex;

pub(crate) enum Regression {
    Found { witness: Vec<Move>, expansions: usize },
    Exhausted { expansions: usize },
    OutOfBudget { expansions: usize },
}

struct Search<'a> {
    parent: &'a [Option<Vertex>],
    order: Vec<Vertex>,
    pairs: Vec<Vec<(Vertex, Vertex)>>,
    supply: Vec<u32>,
    demand: Vec<u32>,
    weight: Vec<f64>,
    supply_weight: Vec<f64>,
    demand_weight: Vec<f64>,
    supply_count: Vec<u32>,
    demand_count: Vec<u32>,
    chosen: Vec<(Vertex, Vertex, Vertex)>,
    failed: HashSet<(usize, Vec<(Vertex, u32)>)>,
    expansions: usize,
    budget: usize,
}

const SLACK: f64 = 1e-9;

pub(crate) fn regress(g: &Graph, d: &Distribution, t: Vertex, budget: usize) -> Regression {
    let view = RootedView::new(g, t).expect("target checked by caller");
    let n = g.vertex_count();
    let mut order: Vec<Vertex> = (0..n).collect();
    order.sort_by_key(|&v| (view.level[v], v));
    let omega = crate::weights::GoldenNumber::omega().to_f64();
    let weight: Vec<f64> = view.level.iter().map(|&l| omega.powi(l as i32)).collect();
    let supply: Vec<u32> = (0..n).map(|v| d.contains(v) as u32).collect();
    let mut supply_weight = vec![0.0; n];
    let mut supply_count = vec![0u32; n];
    for &v in order.iter().rev() {
        supply_weight[v] += supply[v] as f64 * weight[v];
        supply_count[v] += supply[v];
        if let Some(p) = view.parent[v] {
            let (w, c) = (supply_weight[v], supply_count[v]);
            supply_weight[p] += w;
            supply_count[p] += c;
        }
    }
    let mut children = vec![Vec::new(); n];
    for v in 0..n {
        if let Some(p) = view.parent[v] {
            children[p].push(v);
        }
    }
    let pairs: Vec<Vec<(Vertex, Vertex)>> = (0..n)
        .map(|x| {
            let mut ps: Vec<(Vertex, Vertex)> = children[x]
                .iter()
                .flat_map(|&c| children[c].iter().map(move |&gc| (c, gc)))
                .collect();
            // Richest subtrees first.
            ps.sort_by(|a, b| supply_weight[b.1].total_cmp(&supply_weight[a.1]).then(a.cmp(b)));
            ps
        })
        .collect();

    let mut search = Search {
        parent: &view.parent,
        order,
        pairs,
        supply,
        demand: vec![0; n],
        demand_weight: vec![0.0; n],
        supply_count,
        demand_count: vec![0; n],
        weight,
        supply_weight,
        chosen: Vec::new(),
        failed: HashSet::new(),
        expansions: 0,
        budget,
    };
    search.add_demand(t, 1);
    if !search.fits(t) {
        return Regression::Exhausted { expansions: 0 };
    }
    match search.resolve(0) {
        Some(true) => Regression::Found {
            witness: search.witness(&view.level, d),
            expansions: search.expansions,
        },
        Some(false) => Regression::Exhausted {
            expansions: search.expansions,
        },
        None => Regression::OutOfBudget {
            expansions: search.expansions,
        },
    }
}

impl Search<'_> {
    fn add_demand(&mut self, v: Vertex, k: i64) {
        self.demand[v] = (self.demand[v] as i64 + k) as u32;
        let delta = k as f64 * self.weight[v];
        let mut cur = Some(v);
        while let Some(y) = cur {
            self.demand_weight[y] += delta;
            self.demand_count[y] = (self.demand_count[y] as i64 + k) as u32;
            cur = self.parent[y];
        }
    }

    fn fits(&self, v: Vertex) -> bool {
        self.demand_count[v] <= self.supply_count[v]
            && self.demand_weight[v] <= self.supply_weight[v] + SLACK
    }

    fn chain_fits(&self, v: Vertex) -> bool {
        let mut cur = Some(v);
        while let Some(y) = cur {
            if !self.fits(y) {
                return false;
            }
            cur = self.parent[y];
        }
        true
    }

    fn frontier_key(&self, i: usize) -> (usize, Vec<(Vertex, u32)>) {
        let pending = self.order[i..]
            .iter()
            .filter(|&&v| self.demand[v] > 0)
            .map(|&v| (v, self.demand[v]))
            .collect();
        (i, pending)
    }

    /// `None` when the budget runs out.
    fn resolve(&mut self, from: usize) -> Option<bool> {
        let Some(i) = (from..self.order.len()).find(|&i| {
            let v = self.order[i];
            self.demand[v] > self.supply[v]
        }) else {
            return Some(true);
        };
        let key = self.frontier_key(i);
        if self.failed.contains(&key) {
            return Some(false);
        }
        let x = self.order[i];
        let excess = self.demand[x] - self.supply[x];
        self.add_demand(x, -(excess as i64));
        let result = self.distribute(x, i, 0, excess);
        if result == Some(false) {
            self.add_demand(x, excess as i64);
            self.failed.insert(key);
        }
        result
    }

    fn distribute(&mut self, x: Vertex, i: usize, k: usize, remaining: u32) -> Option<bool> {
        self.expansions += 1;
        if self.expansions > self.budget {
            return None;
        }
        if remaining == 0 {
            return self.resolve(i + 1);
        }
        if k == self.pairs[x].len() {
            return Some(false);
        }
        let (c, gc) = self.pairs[x][k];
        for count in self.count_order(x, k, remaining) {
            if count > 0 {
                self.add_demand(c, count as i64);
                self.add_demand(gc, count as i64);
                if !(self.fits(gc) && self.chain_fits(c)) {
                    self.add_demand(c, -(count as i64));
                    self.add_demand(gc, -(count as i64));
                    continue;
                }
                self.chosen.extend(std::iter::repeat_n((gc, c, x), count as usize));
            }
            match self.distribute(x, i, k + 1, remaining - count) {
                Some(false) => {}
                other => return other,
            }
            if count > 0 {
                self.chosen.truncate(self.chosen.len() - count as usize);
                self.add_demand(c, -(count as i64));
                self.add_demand(gc, -(count as i64));
            }
        }
        Some(false)
    }

    /// Counts for pair `k`, nearest its share of the remaining slack first.
    fn count_order(&self, x: Vertex, k: usize, remaining: u32) -> Vec<u32> {
        let slack = |&(c, gc): &(Vertex, Vertex)| {
            let free = |v: Vertex| (self.supply_weight[v] - self.demand_weight[v]).max(0.0);
            free(c).min(free(gc) / self.weight[gc] * self.weight[c]) + 1e-12
        };
        let pairs = &self.pairs[x][k..];
        let total: f64 = pairs.iter().map(slack).sum();
        let share = remaining as f64 * slack(&pairs[0]) / total;
        let mut counts: Vec<u32> = (0..=remaining).collect();
        counts.sort_by(|a, b| {
            (*a as f64 - share)
                .abs()
                .total_cmp(&(*b as f64 - share).abs())
                .then(b.cmp(a))
        });
        counts
    }

    /// Orders the chosen moves. Deepest landings first always works, since
    /// every move consumes pegs produced strictly deeper; a greedy pass that
    /// prefers landing on empty vertices is tried first so the witness uses
    /// plain pegging moves where it can.
    fn witness(&self, level: &[usize], d: &Distribution) -> Vec<Move> {
        let mut moves = self.chosen.clone();
        moves.sort_by_key(|&(_, _, x)| std::cmp::Reverse(level[x]));
        let order = greedy_schedule(&moves, d).unwrap_or(moves);
        let mut counts = d.to_multi();
        order
            .into_iter()
            .map(|(from, over, to)| {
                let kind = if counts.count(to) > 0 {
                    MoveKind::Stacking
                } else {
                    MoveKind::Pegging
                };
                counts.take(from);
                counts.take(over);
                counts.add(to, 1);
                Move { from, over, to, kind }
            })
            .collect()
    }
}

type Jump = (Vertex, Vertex, Vertex);

fn greedy_schedule(moves: &[Jump], d: &Distribution) -> Option<Vec<Jump>> {
    let mut counts = d.to_multi();
    let mut left: Vec<Jump> = moves.to_vec();
    let mut out = Vec::with_capacity(moves.len());
    while !left.is_empty() {
        let ready = |m: &Jump| {
            let (from, over, _) = *m;
            counts.count(from) > 0 && counts.count(over) > 0
        };
        let pick = left
            .iter()
            .position(|m| ready(m) && counts.count(m.2) == 0)
            .or_else(|| left.iter().position(ready))?;
        let (from, over, to) = left.remove(pick);
        counts.take(from);
        counts.take(over);
        counts.add(to, 1);
        out.push((from, over, to));
    }
    Some(out)

}
