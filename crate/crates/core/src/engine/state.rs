use std::fmt;

use serde::{Deserialize, Serialize};

use crate::Vertex;

/// Proper distribution: at most one peg per vertex, stored as a bit vector.
///
/// Trailing zero words are trimmed so that equal sets compare equal
/// regardless of construction history; the derived ordering is lexicographic
/// on the word encoding.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Distribution {
    words: Vec<u64>,
}

impl Distribution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_vertices<I: IntoIterator<Item = Vertex>>(vertices: I) -> Self {
        let mut d = Distribution::new();
        for v in vertices {
            d.insert(v);
        }
        d
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.words
            .get(v / 64)
            .is_some_and(|w| w & (1 << (v % 64)) != 0)
    }

    /// Adds a peg; returns false if `v` was already occupied.
    pub fn insert(&mut self, v: Vertex) -> bool {
        let (i, bit) = (v / 64, 1u64 << (v % 64));
        if self.words.len() <= i {
            self.words.resize(i + 1, 0);
        }
        let fresh = self.words[i] & bit == 0;
        self.words[i] |= bit;
        fresh
    }

    /// Removes a peg; returns false if `v` was empty.
    pub fn remove(&mut self, v: Vertex) -> bool {
        let (i, bit) = (v / 64, 1u64 << (v % 64));
        let Some(word) = self.words.get_mut(i) else {
            return false;
        };
        let present = *word & bit != 0;
        *word &= !bit;
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
        present
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Occupied vertices in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i * 64 + bit)
            })
        })
    }

    pub fn max_vertex(&self) -> Option<Vertex> {
        self.iter().last()
    }

    pub fn is_subset(&self, other: &Distribution) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, &w)| w & !other.words.get(i).copied().unwrap_or(0) == 0)
    }

    pub fn union_with(&mut self, other: &Distribution) {
        if self.words.len() < other.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.iter().collect()
    }

    pub fn to_multi(&self) -> MultiDistribution {
        MultiDistribution::from_vertices(self.iter())
    }
}

impl fmt::Debug for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<Vertex> for Distribution {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        Distribution::from_vertices(iter)
    }
}

impl Serialize for Distribution {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for Distribution {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Vec::<Vertex>::deserialize(d)?.into_iter().collect())
    }
}

/// Multiset of pegs. Stored densely as per-vertex counts; trailing zero
/// counts are trimmed so equal multisets compare equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MultiDistribution {
    counts: Vec<u32>,
}

impl MultiDistribution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_vertices<I: IntoIterator<Item = Vertex>>(vertices: I) -> Self {
        let mut d = MultiDistribution::new();
        for v in vertices {
            d.add(v, 1);
        }
        d
    }

    pub fn from_counts<I: IntoIterator<Item = (Vertex, u32)>>(pairs: I) -> Self {
        let mut d = MultiDistribution::new();
        for (v, c) in pairs {
            d.add(v, c);
        }
        d
    }

    pub fn count(&self, v: Vertex) -> u32 {
        self.counts.get(v).copied().unwrap_or(0)
    }

    pub fn add(&mut self, v: Vertex, k: u32) {
        if k == 0 {
            return;
        }
        if self.counts.len() <= v {
            self.counts.resize(v + 1, 0);
        }
        self.counts[v] += k;
    }

    /// Takes one peg off `v`; false if there was none.
    pub fn take(&mut self, v: Vertex) -> bool {
        match self.counts.get_mut(v) {
            Some(c) if *c > 0 => {
                *c -= 1;
                while self.counts.last() == Some(&0) {
                    self.counts.pop();
                }
                true
            }
            _ => false,
        }
    }

    pub fn total(&self) -> u32 {
        self.counts.iter().sum()
    }

    /// `(vertex, count)` for every occupied vertex, increasing vertex.
    pub fn iter(&self) -> impl Iterator<Item = (Vertex, u32)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(v, &c)| (v, c))
    }

    /// Occupied vertices (support of the multiset).
    pub fn support(&self) -> Distribution {
        self.iter().map(|(v, _)| v).collect()
    }

    pub fn is_proper(&self) -> bool {
        self.counts.iter().all(|&c| c <= 1)
    }

    /// The proper distribution with the same pegs, if every count is one.
    pub fn to_proper(&self) -> Option<Distribution> {
        self.is_proper().then(|| self.support())
    }

    /// Every peg of `other` has a counterpart here (multiset inclusion).
    pub fn supersedes(&self, other: &MultiDistribution) -> bool {
        other.iter().all(|(v, c)| self.count(v) >= c)
    }
}

impl fmt::Debug for MultiDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.iter()).finish()
    }
}

impl Serialize for MultiDistribution {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(self.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn trimming_keeps_equality_canonical() {
        let mut a = Distribution::from_vertices([3, 200]);
        a.remove(200);
        assert_eq!(a, Distribution::from_vertices([3]));
        assert!(!a.remove(500));
        assert_eq!(a.len(), 1);

        let mut m = MultiDistribution::from_counts([(1, 2), (70, 1)]);
        assert!(m.take(70));
        assert_eq!(m, MultiDistribution::from_counts([(1, 2)]));
        assert!(!m.take(70));
        assert!(!m.is_proper());
        assert!(m.supersedes(&MultiDistribution::from_vertices([1])));
    }

    proptest! {
        #[test]
        fn bitset_matches_btreeset(ops in prop::collection::vec((any::<bool>(), 0usize..300), 0..80)) {
            let mut model = std::collections::BTreeSet::new();
            let mut d = Distribution::new();
            for (insert, v) in ops {
                if insert {
                    prop_assert_eq!(d.insert(v), model.insert(v));
                } else {
                    prop_assert_eq!(d.remove(v), model.remove(&v));
                }
            }
            prop_assert_eq!(d.to_vec(), model.iter().copied().collect::<Vec<_>>());
            prop_assert_eq!(d.len(), model.len());
            prop_assert_eq!(d.clone(), model.iter().copied().collect::<Distribution>());
        }
    }
}
