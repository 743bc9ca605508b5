//! Closed forms on complete binary trees `T_h` and the adversarial
//! distribution behind the pegging-number lower bound.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{omega_powers, summed_weights_all, GoldenNumber};
use crate::engine::Distribution;
use crate::error::{Error, Result};
use crate::graph::{build_family, distances_from, FamilySpec, Graph, RootedView};
use crate::Vertex;

/// Empty-vertex budget claimed for the adversarial construction.
pub const CLAIMED_EMPTY_BUDGET: usize = 172;

/// Height of the subtree removed around the target in the base distribution.
pub const BASE_SUBTREE_HEIGHT: usize = 8;

fn two_omega() -> GoldenNumber {
    GoldenNumber::omega().scale_int(2)
}

/// `w_r(V(T_h)) = Σ_{l=0}^{h} (2ω)^l`.
pub fn binary_root_weight_closed(h: usize) -> GoldenNumber {
    let step = two_omega();
    let mut term = GoldenNumber::one();
    let mut sum = GoldenNumber::zero();
    for _ in 0..=h {
        sum += &term;
        term = &term * &step;
    }
    sum
}

/// The quotient form `((2ω)^{h+1} − 1) / (2ω − 1)`, kept only to check that
/// it agrees with the sum.
pub fn binary_root_weight_quotient(h: usize) -> GoldenNumber {
    let q = two_omega();
    let num = &q.pow(h as u32 + 1) - &GoldenNumber::one();
    let den = &q - &GoldenNumber::one();
    num.checked_div(&den).expect("2ω − 1 is nonzero")
}

/// `w_L(v)` for a vertex on level `l` of `T_h` with `L` the leaves:
/// `(2ω)^{h−l} / ω² · (1 − ω(2ω²)^l)`.
pub fn binary_summed_weight_closed(h: usize, l: usize) -> Result<GoldenNumber> {
    if l > h {
        return Err(Error::OutOfRange(format!("level {l} exceeds height {h}")));
    }
    let omega = GoldenNumber::omega();
    let omega_sq = &omega * &omega;
    let inner = &GoldenNumber::one() - &(&omega * &omega_sq.scale_int(2).pow(l as u32));
    let front = two_omega()
        .pow((h - l) as u32)
        .checked_div(&omega_sq)
        .expect("ω² is nonzero");
    Ok(&front * &inner)
}

/// Levels `0..=h` of `T_h` in strictly decreasing order of `w_L`.
pub fn binary_level_ranking(h: usize) -> Result<Vec<usize>> {
    if h < 6 {
        return Err(Error::OutOfRange(format!(
            "level ranking needs height at least 6, got {h}"
        )));
    }
    let weights = (0..=h)
        .map(|l| binary_summed_weight_closed(h, l))
        .collect::<Result<Vec<_>>>()?;
    let mut levels: Vec<usize> = (0..=h).collect();
    levels.sort_by(|&x, &y| weights[y].cmp(&weights[x]));
    if levels.windows(2).any(|w| weights[w[0]] == weights[w[1]]) {
        return Err(Error::VerificationFailed(format!(
            "two levels of T_{h} share a summed weight"
        )));
    }
    Ok(levels)
}

/// `w_L(v_a) / w_L(v_b)` as a float.
pub fn binary_level_ratio(h: usize, a: usize, b: usize) -> Result<f64> {
    let num = binary_summed_weight_closed(h, a)?;
    let den = binary_summed_weight_closed(h, b)?;
    Ok(num.checked_div(&den).expect("summed weights are positive").to_f64())
}

/// Vertices of one distance class from the target, and how many of them
/// each distribution pegs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceClass {
    pub distance: usize,
    pub vertices: usize,
    pub base_pegged: usize,
    pub refined_pegged: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AdversarialConstruction {
    pub height: usize,
    pub vertex_count: usize,
    pub target: Vertex,
    /// Everything outside the height-8 subtree that holds the target.
    pub base: Distribution,
    pub base_weight: GoldenNumber,
    pub refined: Distribution,
    pub refined_weight: GoldenNumber,
    pub census: Vec<DistanceClass>,
    pub refined_empty: usize,
    pub claimed_empty: usize,
}

impl AdversarialConstruction {
    /// `|V| − |D′| − 1`: any size above this pegs every vertex, if the
    /// construction is the worst case.
    pub fn pegging_lower_bound(&self) -> usize {
        self.refined.len() + 1
    }

    /// Signed gap between the recomputed and the claimed empty budget.
    pub fn budget_discrepancy(&self) -> i64 {
        self.refined_empty as i64 - self.claimed_empty as i64
    }
}

/// Builds the adversarial distribution on `T_h` for the last leaf `t`.
///
/// The base keeps every vertex outside the height-8 subtree containing `t`.
/// The refinement trades the pegs nearest to `t` for the many light vertices
/// far from it: it takes whole distance classes from the farthest inward for
/// as long as the weight stays below one, then the smallest ids of the next
/// class. That is the largest distribution with `w_t < 1`.
pub fn binary_adversarial_distribution(h: usize) -> Result<AdversarialConstruction> {
    if h < 14 {
        return Err(Error::OutOfRange(format!(
            "adversarial construction needs height at least 14, got {h}"
        )));
    }
    let spec = FamilySpec::Ary {
        branching: 2,
        height: h,
    };
    let g = build_family(&spec)?;
    let n = g.vertex_count();
    let t = n - 1;
    let view = RootedView::for_family(&g)?;
    let apex = view.ancestors(t)[BASE_SUBTREE_HEIGHT];
    let removed = view.subtree(&g, apex);
    let mut base = Distribution::from_vertices(0..n);
    for &v in &removed {
        base.remove(v);
    }

    let dist = distances_from(&g, t)?;
    let max_d = dist.iter().copied().max().unwrap_or(0);
    let powers = omega_powers(max_d);
    let mut classes: Vec<Vec<Vertex>> = vec![Vec::new(); max_d + 1];
    for v in 0..n {
        classes[dist[v]].push(v);
    }
    let base_weight = weight_by_class(&base, &dist, &powers);

    let refined = lightest_first(&classes, &powers);
    let refined_weight = weight_by_class(&refined, &dist, &powers);
    if refined_weight.cmp_integer(1) != Ordering::Less {
        return Err(Error::VerificationFailed(
            "refined adversarial distribution weighs at least one".into(),
        ));
    }

    let census = classes
        .iter()
        .enumerate()
        .map(|(d, class)| DistanceClass {
            distance: d,
            vertices: class.len(),
            base_pegged: class.iter().filter(|&&v| base.contains(v)).count(),
            refined_pegged: class.iter().filter(|&&v| refined.contains(v)).count(),
        })
        .collect();
    Ok(AdversarialConstruction {
        height: h,
        vertex_count: n,
        target: t,
        refined_empty: n - refined.len(),
        base,
        base_weight,
        refined,
        refined_weight,
        census,
        claimed_empty: CLAIMED_EMPTY_BUDGET,
    })
}

fn weight_by_class(d: &Distribution, dist: &[usize], powers: &[GoldenNumber]) -> GoldenNumber {
    let mut histogram = vec![0u64; powers.len()];
    for v in d.iter() {
        histogram[dist[v]] += 1;
    }
    super::weight_of_histogram(&histogram, powers)
}

fn lightest_first(classes: &[Vec<Vertex>], powers: &[GoldenNumber]) -> Distribution {
    let one = GoldenNumber::one();
    let mut out = Distribution::new();
    let mut total = GoldenNumber::zero();
    for d in (1..classes.len()).rev() {
        let class = &classes[d];
        let whole = &total + &powers[d].scale_int(class.len() as u64);
        if whole < one {
            total = whole;
            out.union_with(&Distribution::from_vertices(class.iter().copied()));
            continue;
        }
        // Largest m with total + m·ω^d < 1.
        let room = (&one - &total)
            .checked_div(&powers[d])
            .expect("ω^d is nonzero");
        let mut m = room.to_f64().floor().max(0.0) as u64;
        let fits = |m: u64| &total + &powers[d].scale_int(m) < one;
        while m > 0 && !fits(m) {
            m -= 1;
        }
        while m + 1 < class.len() as u64 && fits(m + 1) {
            m += 1;
        }
        let mut ids = class.clone();
        ids.sort_unstable();
        for &v in ids.iter().take(m as usize) {
            out.insert(v);
        }
        break;
    }
    out
}

/// Brute-force `w_L(v)` for one vertex per level of `T_h`, L the leaves.
pub fn binary_summed_weights_by_level(g: &Graph) -> Result<Vec<GoldenNumber>> {
    let view = RootedView::for_family(g)?;
    let leaves: Vec<Vertex> = view.at_level(view.height());
    let all = summed_weights_all(g, &leaves)?;
    Ok((0..=view.height()).map(|l| all[view.at_level(l)[0]].clone()).collect())
}

/// `Σ_{l<levels} 2^l · w_L(v_l)`: the summed weight of the top `levels`
/// levels of `T_h`.
pub fn binary_top_levels_weight(h: usize, levels: usize) -> Result<GoldenNumber> {
    let mut sum = GoldenNumber::zero();
    for l in 0..levels.min(h + 1) {
        sum += &binary_summed_weight_closed(h, l)?.scale(&BigRational::from_integer((1u64 << l).into()));
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree(h: usize) -> Graph {
        build_family(&FamilySpec::Ary {
            branching: 2,
            height: h,
        })
        .unwrap()
    }

    #[test]
    fn root_weight_forms_agree() {
        assert_eq!(binary_root_weight_closed(0), GoldenNumber::one());
        assert_eq!(
            binary_root_weight_closed(1),
            GoldenNumber::from_integers(1, 2)
        );
        for h in 0..=10 {
            let g = tree(h);
            let all: Vec<Vertex> = (0..g.vertex_count()).collect();
            let brute = super::super::summed_weight(&g, &[0], &all).unwrap();
            assert_eq!(binary_root_weight_closed(h), brute, "h={h}");
            assert_eq!(binary_root_weight_quotient(h), brute, "h={h}");
        }
    }

    #[test]
    fn summed_weight_closed_form_matches_brute_force() {
        for h in 0..=10 {
            let brute = binary_summed_weights_by_level(&tree(h)).unwrap();
            for (l, b) in brute.iter().enumerate() {
                assert_eq!(&binary_summed_weight_closed(h, l).unwrap(), b, "h={h} l={l}");
            }
        }
        assert_eq!(binary_summed_weight_closed(7, 0).unwrap(), two_omega().pow(7));
        assert!(binary_summed_weight_closed(3, 4).is_err());
    }

    #[test]
    fn ranking() {
        assert_eq!(binary_level_ranking(8).unwrap(), vec![1, 2, 3, 0, 4, 5, 6, 7, 8]);
        for h in 6..=30 {
            assert_eq!(binary_level_ranking(h).unwrap()[..5], [1, 2, 3, 0, 4]);
        }
        assert!(binary_level_ranking(5).is_err());
        for h in [6, 9, 20] {
            assert!((binary_level_ratio(h, 0, 4).unwrap() - 1.12937).abs() < 1e-5);
            assert!((binary_level_ratio(h, 0, 3).unwrap() - 0.995713).abs() < 1e-5);
        }
    }

    #[test]
    fn adversary_rejects_small_heights() {
        assert!(binary_adversarial_distribution(13).is_err());
    }
}
