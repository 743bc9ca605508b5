//! Golden-ratio weights and the bounds they certify.
//!
//! The weight of a peg on `v` toward a target `t` is `ω^d(v,t)`. A pegging
//! move never increases the total weight toward any target, and a peg
//! sitting on `t` weighs one, so `w_t(D) < 1` proves that `t` is out of
//! reach. Summing over a target set `L` gives a lower bound on the size of
//! any distribution that reaches all of `L`.

pub mod binary;
mod golden;

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use golden::GoldenNumber;

use crate::engine::Distribution;
use crate::error::{Error, Result};
use crate::graph::{distances_from, Graph};
use crate::Vertex;

/// `ω^k` in canonical form.
pub fn omega_pow(k: usize) -> GoldenNumber {
    GoldenNumber::omega_pow(k)
}

/// Exact sign of `x − q`.
pub fn cmp_rational(x: &GoldenNumber, q: &BigRational) -> Ordering {
    x.cmp_rational(q)
}

/// `ω^0, …, ω^max`.
pub(crate) fn omega_powers(max: usize) -> Vec<GoldenNumber> {
    let mut out = Vec::with_capacity(max + 1);
    let mut cur = GoldenNumber::one();
    let omega = GoldenNumber::omega();
    for _ in 0..=max {
        out.push(cur.clone());
        cur = &cur * &omega;
    }
    out
}

/// `Σ_d histogram[d] · ω^d`.
pub(crate) fn weight_of_histogram(histogram: &[u64], powers: &[GoldenNumber]) -> GoldenNumber {
    histogram
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(d, &c)| powers[d].scale_int(c))
        .sum()
}

fn check_subset(g: &Graph, vertices: &[Vertex]) -> Result<()> {
    vertices.iter().try_for_each(|&v| g.check_vertex(v))
}

/// `w_t(D) = Σ_{v∈D} ω^d(v,t)`.
pub fn distribution_weight(g: &Graph, t: Vertex, d: &Distribution) -> Result<GoldenNumber> {
    summed_weight(g, &[t], &d.to_vec())
}

/// `w_L(X) = Σ_{t∈L} Σ_{x∈X} ω^d(x,t)`. A single vertex is the slice `[v]`.
pub fn summed_weight(g: &Graph, targets: &[Vertex], x: &[Vertex]) -> Result<GoldenNumber> {
    check_subset(g, targets)?;
    check_subset(g, x)?;
    let mut histogram = vec![0u64; g.vertex_count()];
    for &t in targets {
        let dist = distances_from(g, t)?;
        for &v in x {
            histogram[dist[v]] += 1;
        }
    }
    let max = histogram.iter().rposition(|&c| c > 0).unwrap_or(0);
    Ok(weight_of_histogram(&histogram[..=max], &omega_powers(max)))
}

/// `w_L(v)` for every vertex `v`.
pub fn summed_weights_all(g: &Graph, targets: &[Vertex]) -> Result<Vec<GoldenNumber>> {
    check_subset(g, targets)?;
    let n = g.vertex_count();
    let mut rows: Vec<Vec<u64>> = vec![Vec::new(); n];
    for &t in targets {
        let dist = distances_from(g, t)?;
        for (v, &d) in dist.iter().enumerate() {
            let row = &mut rows[v];
            if row.len() <= d {
                row.resize(d + 1, 0);
            }
            row[d] += 1;
        }
    }
    let max = rows.iter().map(Vec::len).max().unwrap_or(1);
    let powers = omega_powers(max);
    Ok(rows.iter().map(|row| weight_of_histogram(row, &powers)).collect())
}

/// Exact weight with a display-only float.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightReport {
    pub targets: Vec<Vertex>,
    #[serde(flatten)]
    pub value: GoldenNumber,
    pub float_hint: f64,
}

impl WeightReport {
    pub fn new(targets: Vec<Vertex>, value: GoldenNumber) -> Self {
        let float_hint = value.to_f64();
        WeightReport {
            targets,
            value,
            float_hint,
        }
    }
}

/// Proof that `target` is unreachable: its weight is strictly below one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightCertificate {
    pub target: Vertex,
    pub weight: GoldenNumber,
}

/// A certificate when `w_t(D) < 1`. `None` means the test is inconclusive,
/// not that `t` is reachable.
pub fn weight_unreachability_certificate(
    g: &Graph,
    d: &Distribution,
    t: Vertex,
) -> Result<Option<WeightCertificate>> {
    let weight = distribution_weight(g, t, d)?;
    Ok((weight.cmp_integer(1) == Ordering::Less).then_some(WeightCertificate { target: t, weight }))
}

/// Smallest `k` such that the `k` largest summed weights `w_L(v)` add up to
/// at least `|L|`. Any distribution reaching all of `L` has at least this
/// many pegs.
pub fn optimal_lower_bound(g: &Graph, targets: &[Vertex]) -> Result<usize> {
    if targets.is_empty() {
        return Err(Error::OutOfRange("target set must be nonempty".into()));
    }
    let mut weights = summed_weights_all(g, targets)?;
    weights.sort_by(|a, b| b.cmp(a));
    let need = BigRational::from_integer(targets.len().into());
    let mut partial = GoldenNumber::zero();
    for (k, w) in weights.iter().enumerate() {
        partial += w;
        if partial.cmp_rational(&need) != Ordering::Less {
            return Ok(k + 1);
        }
    }
    Ok(g.vertex_count())
}
