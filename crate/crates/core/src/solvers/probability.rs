use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{binomial, coverage, unrank, Coverage};
use crate::engine::{Distribution, SearchBudget};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Above this many size-k subsets the probability is estimated by sampling.
pub const EXACT_ENUMERATION_CAP: u64 = 20_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityReport {
    pub k: usize,
    pub exact: bool,
    /// Distributions examined (all of them when `exact`).
    pub trials: u64,
    pub pegging: u64,
    /// Trials whose outcome was not decided within budget; excluded from
    /// the estimate.
    pub unknown: u64,
    pub estimate: f64,
    pub stderr: f64,
    pub seed: u64,
}

/// Fraction of size-`k` distributions that peg `g`: exact when there are at
/// most [`EXACT_ENUMERATION_CAP`] of them, otherwise estimated from
/// `samples` uniform draws seeded by `seed`.
pub fn peg_probability(
    g: &Graph,
    k: usize,
    samples: u64,
    seed: u64,
    budget: SearchBudget,
) -> Result<ProbabilityReport> {
    let n = g.vertex_count();
    if k > n {
        return Err(Error::OutOfRange(format!("k = {k} exceeds {n} vertices")));
    }
    let total = binomial(n, k);
    let exact = total.is_some_and(|t| t <= EXACT_ENUMERATION_CAP);
    let draws: Vec<Distribution> = if exact {
        (0..total.unwrap_or(0))
            .map(|r| Distribution::from_vertices(unrank(n, k, r)))
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples)
            .map(|_| Distribution::from_vertices(rand::seq::index::sample(&mut rng, n, k)))
            .collect()
    };
    let outcomes = draws
        .par_iter()
        .map(|d| coverage(g, d, budget).map(|(c, _)| c))
        .collect::<Result<Vec<_>>>()?;
    let pegging = outcomes.iter().filter(|c| **c == Coverage::Pegs).count() as u64;
    let unknown = outcomes.iter().filter(|c| matches!(c, Coverage::Unknown(_))).count() as u64;
    let decided = outcomes.len() as u64 - unknown;
    let estimate = if decided == 0 {
        f64::NAN
    } else {
        pegging as f64 / decided as f64
    };
    let stderr = if exact || decided == 0 {
        0.0
    } else {
        (estimate * (1.0 - estimate) / decided as f64).sqrt()
    };
    Ok(ProbabilityReport {
        k,
        exact,
        trials: outcomes.len() as u64,
        pegging,
        unknown,
        estimate,
        stderr,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_family, FamilySpec};

    #[test]
    fn star_probabilities_are_exact() {
        let g = build_family(&FamilySpec::Star(5)).unwrap();
        let p = |k| peg_probability(&g, k, 0, 0, SearchBudget::default()).unwrap();
        assert_eq!((p(1).pegging, p(1).trials), (0, 5));
        assert_eq!((p(4).pegging, p(4).trials), (4, 5));
        assert_eq!(p(4).estimate, 0.8);
        assert_eq!(p(5).estimate, 1.0);
        assert!(p(4).exact);
        assert!(peg_probability(&g, 6, 0, 0, SearchBudget::default()).is_err());
    }

    #[test]
    fn sampling_is_seeded() {
        let g = build_family(&FamilySpec::Ary { branching: 2, height: 4 }).unwrap();
        let a = peg_probability(&g, 15, 200, 7, SearchBudget::default()).unwrap();
        let b = peg_probability(&g, 15, 200, 7, SearchBudget::default()).unwrap();
        assert!(!a.exact);
        assert_eq!(a, b);
        assert_eq!(a.trials, 200);
        assert!(a.stderr <= 0.5 / (200f64).sqrt() + 1e-12);
    }
}
