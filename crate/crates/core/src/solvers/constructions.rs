//! Explicit pegging distributions: paths, caterpillars, lobsters and the
//! Fibonacci distributions on wide trees.

use super::{coverage, Coverage};
use crate::engine::{Distribution, SearchBudget};
use crate::error::{Error, Result};
use crate::graph::{ary_vertex_count, build_family, diameter_and_longest_path, FamilySpec, Graph};
use crate::Vertex;

fn check_pegs(g: &Graph, d: &Distribution, what: &str) -> Result<()> {
    match coverage(g, d, SearchBudget::default())?.0 {
        Coverage::Pegs => Ok(()),
        Coverage::Misses(v) => Err(Error::VerificationFailed(format!(
            "{what} does not reach vertex {v}"
        ))),
        Coverage::Unknown(v) => Err(Error::BudgetExhausted(format!(
            "could not decide whether {what} reaches vertex {v}"
        ))),
    }
}

/// An optimal distribution on `P_n`: `⌈n/2⌉` pegs for `n ≥ 3`.
///
/// Found by backtracking in lexicographic order over sets in which every
/// vertex is pegged or next to a peg (no other vertex of a path can be
/// reached), then checked with the engine.
pub fn path_optimal_distribution(n: usize) -> Result<Distribution> {
    if n == 0 {
        return Err(Error::InvalidFamily("path needs at least one vertex".into()));
    }
    if n <= 2 {
        return Ok(Distribution::from_vertices(0..n));
    }
    let g = build_family(&FamilySpec::Path(n))?;
    let k = n.div_ceil(2);
    let mut chosen = Vec::with_capacity(k);
    let found = dominating(n, k, 0, &mut chosen, &mut |set| {
        let d = Distribution::from_vertices(set.iter().copied());
        matches!(coverage(&g, &d, SearchBudget::default()), Ok((Coverage::Pegs, _)))
    });
    if !found {
        return Err(Error::VerificationFailed(format!(
            "no pegging distribution of size {k} on a path of {n} vertices"
        )));
    }
    Ok(Distribution::from_vertices(chosen))
}

/// Extends `chosen` to `k` vertices of `P_n` so that every vertex is pegged
/// or adjacent to a peg, calling `accept` on each complete set.
fn dominating(
    n: usize,
    k: usize,
    next: usize,
    chosen: &mut Vec<usize>,
    accept: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    if chosen.len() == k {
        let last = *chosen.last().expect("k ≥ 1");
        return last + 1 >= n - 1 && accept(chosen);
    }
    // The first vertex not yet dominated bounds how far the next peg may go.
    let undominated = chosen.last().map_or(0, |&v| v + 2);
    let limit = (undominated + 1).min(n - 1);
    for v in next..=limit {
        if n - v < k - chosen.len() {
            break;
        }
        chosen.push(v);
        if dominating(n, k, v + 1, chosen, accept) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Path-optimal pegs laid along a longest path of a caterpillar. Graphs with
/// at most two vertices get every vertex.
pub fn caterpillar_distribution(e: &Graph) -> Result<Distribution> {
    if !e.is_caterpillar() {
        return Err(Error::WrongFamily {
            expected: "caterpillar",
        });
    }
    let (d, path) = diameter_and_longest_path(e);
    if d < 2 {
        return Ok(Distribution::from_vertices(e.vertices()));
    }
    let on_path = path_optimal_distribution(d + 1)?;
    let dist = Distribution::from_vertices(on_path.iter().map(|i| path[i]));
    check_pegs(e, &dist, "caterpillar distribution")?;
    Ok(dist)
}

/// Every interior vertex of a longest path of a lobster: `d − 1` pegs.
pub fn lobster_distribution(l: &Graph) -> Result<Distribution> {
    if !l.is_lobster() {
        return Err(Error::WrongFamily { expected: "lobster" });
    }
    let (d, path) = diameter_and_longest_path(l);
    if d < 5 {
        return Err(Error::OutOfRange(format!(
            "lobster construction needs diameter at least 5, got {d}"
        )));
    }
    let dist = Distribution::from_vertices(path[1..d].iter().copied());
    check_pegs(l, &dist, "lobster distribution")?;
    Ok(dist)
}

fn fibonacci(k: usize) -> u64 {
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..k {
        (a, b) = (b, a + b);
    }
    a
}

/// Branching required for the Fibonacci distribution of height `h`:
/// `F_{h+3} − 2`.
pub fn fibonacci_min_branching(h: usize) -> u64 {
    fibonacci(h + 3) - 2
}

/// `D_h` on the complete `b`-ary tree of height `h` (breadth-first ids).
///
/// `D_0` is the root and `D_1` the root and its first child. `D_k` joins a
/// copy of `D_{k−1}` and a copy of `D_{k−2}` on disjoint sets of root
/// children, sharing only the root, plus a fresh root child `x` and its
/// first child `y`. Only ids are computed, so the tree itself is never
/// built; `|D_h| = F_{h+3} − 1`.
pub fn fibonacci_distribution(b: usize, h: usize) -> Result<Distribution> {
    let need = fibonacci_min_branching(h);
    if (b as u64) < need {
        return Err(Error::OutOfRange(format!(
            "height {h} needs branching at least {need}, got {b}"
        )));
    }
    if ary_vertex_count(b, h).is_none() {
        return Err(Error::InvalidFamily(format!("ary:{b},{h} has too many vertices")));
    }
    // Root children are numbered 1..=b; child j of vertex i is b·i + j.
    let mut next_child = 1;
    let mut pegs: Vec<Vertex> = vec![0];
    place(h, b, &mut next_child, &mut pegs);
    let d = Distribution::from_vertices(pegs);
    debug_assert_eq!(d.len() as u64, fibonacci(h + 3) - 1);
    Ok(d)
}

/// Adds the non-root pegs of `D_k`, taking root children from `next_child`.
fn place(k: usize, b: usize, next_child: &mut usize, pegs: &mut Vec<Vertex>) {
    match k {
        0 => {}
        1 => {
            pegs.push(*next_child);
            *next_child += 1;
        }
        _ => {
            place(k - 1, b, next_child, pegs);
            place(k - 2, b, next_child, pegs);
            let x = *next_child;
            *next_child += 1;
            pegs.push(x);
            pegs.push(b * x + 1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate;

    #[test]
    fn paths() {
        assert_eq!(path_optimal_distribution(1).unwrap().to_vec(), vec![0]);
        assert_eq!(path_optimal_distribution(2).unwrap().len(), 2);
        for n in 3..=12 {
            let d = path_optimal_distribution(n).unwrap();
            assert_eq!(d.len(), n.div_ceil(2), "n={n}");
        }
        assert!(path_optimal_distribution(0).is_err());
    }

    #[test]
    fn caterpillars() {
        let cases = [
            (FamilySpec::Path(7), 4),
            (FamilySpec::Star(5), 2),
            (FamilySpec::Caterpillar(vec![1, 0, 2, 1]), 3),
        ];
        for (spec, size) in cases {
            let g = build_family(&spec).unwrap();
            assert_eq!(caterpillar_distribution(&g).unwrap().len(), size, "{spec}");
        }
        let not = build_family(&FamilySpec::Lobster(vec![vec![1, 1], vec![], vec![1]])).unwrap();
        if !not.is_caterpillar() {
            assert!(caterpillar_distribution(&not).is_err());
        }
        assert!(caterpillar_distribution(&generate::cycle(5)).is_err());
    }

    #[test]
    fn lobsters() {
        let d5 = build_family(&FamilySpec::Lobster(vec![vec![0], vec![1], vec![0], vec![0]])).unwrap();
        assert_eq!(diameter_and_longest_path(&d5).0, 5);
        assert_eq!(lobster_distribution(&d5).unwrap().len(), 4);
        let cat6 = build_family(&FamilySpec::Caterpillar(vec![1, 1, 2, 0, 1])).unwrap();
        assert_eq!(diameter_and_longest_path(&cat6).0, 6);
        assert_eq!(lobster_distribution(&cat6).unwrap().len(), 5);
        let star_core = build_family(&FamilySpec::Lobster(vec![vec![1, 1, 1, 1]])).unwrap();
        assert!(matches!(lobster_distribution(&star_core), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn fibonacci_sizes() {
        for (h, size) in [(0, 1), (1, 2), (2, 4), (3, 7), (4, 12), (5, 20), (6, 33)] {
            let b = fibonacci_min_branching(h) as usize;
            assert_eq!(fibonacci_distribution(b, h).unwrap().len(), size, "h={h}");
            assert_eq!(size as u64, fibonacci(h + 3) - 1);
        }
        assert_eq!(fibonacci_min_branching(2), 3);
        assert_eq!(fibonacci_min_branching(3), 6);
        assert!(fibonacci_distribution(2, 2).is_err());
    }

    #[test]
    fn fibonacci_pegs_small_trees() {
        for (b, h) in [(1, 0), (2, 1), (3, 2)] {
            let g = build_family(&FamilySpec::Ary { branching: b, height: h }).unwrap();
            let d = fibonacci_distribution(b, h).unwrap();
            assert_eq!(coverage(&g, &d, SearchBudget::default()).unwrap().0, Coverage::Pegs, "b={b} h={h}");
        }
    }
}
