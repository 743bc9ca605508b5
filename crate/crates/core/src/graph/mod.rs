//! Undirected simple graphs and the tree families used throughout the crate.
//!
//! Graphs are immutable once built. Family constructors number vertices in
//! BFS order from the root (or from the first spine vertex), so vertex ids are
//! reproducible across runs.

mod family;
pub mod generate;
mod metrics;

use std::collections::VecDeque;

pub use family::{ary_vertex_count, build_family, FamilySpec, RootedView};
pub use metrics::{all_pairs_distances, diameter_and_longest_path, distances_from, leaves};

use crate::error::{Error, Result};
use crate::Vertex;

/// Connected undirected simple graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<Vertex>>,
    family: Option<FamilySpec>,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting self-loops, duplicate
    /// edges, out-of-range endpoints and disconnected inputs.
    pub fn from_edges(vertex_count: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidGraph("graph must have at least one vertex".into()));
        }
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: x,
                        vertex_count,
                    });
                }
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (v, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!("duplicate edge at vertex {v}")));
            }
        }
        let graph = Graph {
            adjacency,
            family: None,
        };
        if !graph.is_connected() {
            return Err(Error::InvalidGraph("graph is not connected".into()));
        }
        Ok(graph)
    }

    pub(crate) fn with_family(mut self, family: FamilySpec) -> Self {
        self.family = Some(family);
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.vertex_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// The generating family, if the graph came from [`build_family`].
    pub fn family(&self) -> Option<&FamilySpec> {
        self.family.as_ref()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.vertex_count()
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: self.vertex_count(),
            })
        }
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == n
    }

    pub fn is_tree(&self) -> bool {
        self.edge_count() + 1 == self.vertex_count()
    }

    /// Induced subgraph on all vertices except `removed`. Returns the new
    /// graph and, for every old vertex, its new id. Fails if the remainder is
    /// empty or disconnected.
    pub fn without_vertex(&self, removed: Vertex) -> Result<(Graph, Vec<Option<Vertex>>)> {
        self.check_vertex(removed)?;
        let mut mapping = vec![None; self.vertex_count()];
        let mut next = 0;
        for v in self.vertices().filter(|&v| v != removed) {
            mapping[v] = Some(next);
            next += 1;
        }
        let edges: Vec<_> = self
            .edges()
            .filter_map(|(u, v)| Some((mapping[u]?, mapping[v]?)))
            .collect();
        Ok((Graph::from_edges(next, &edges)?, mapping))
    }

    /// Copy of the graph with vertices renumbered in BFS order from `start`,
    /// visiting neighbours in increasing id order.
    pub fn relabeled_bfs(&self, start: Vertex) -> Result<Graph> {
        self.check_vertex(start)?;
        let order = bfs_order(self, start);
        let mut new_id = vec![0; self.vertex_count()];
        for (i, &v) in order.iter().enumerate() {
            new_id[v] = i;
        }
        let edges: Vec<_> = self.edges().map(|(u, v)| (new_id[u], new_id[v])).collect();
        let mut g = Graph::from_edges(self.vertex_count(), &edges)?;
        g.family = self.family.clone();
        Ok(g)
    }

    /// Vertices that remain after deleting every leaf.
    pub fn non_leaves(&self) -> Vec<Vertex> {
        self.vertices().filter(|&v| self.degree(v) > 1).collect()
    }

    /// Tree whose non-leaf vertices induce a path (possibly empty).
    pub fn is_caterpillar(&self) -> bool {
        if !self.is_tree() {
            return false;
        }
        let mut mask = vec![true; self.vertex_count()];
        peel_leaves(self, &mut mask);
        induces_path(self, &mask)
    }

    /// Tree that becomes a caterpillar after deleting every leaf.
    pub fn is_lobster(&self) -> bool {
        if !self.is_tree() {
            return false;
        }
        let mut mask = vec![true; self.vertex_count()];
        peel_leaves(self, &mut mask);
        peel_leaves(self, &mut mask);
        induces_path(self, &mask)
    }
}

fn bfs_order(g: &Graph, start: Vertex) -> Vec<Vertex> {
    let mut seen = vec![false; g.vertex_count()];
    let mut order = Vec::with_capacity(g.vertex_count());
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for &v in g.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    order
}

fn induced_degree(g: &Graph, mask: &[bool], v: Vertex) -> usize {
    g.neighbors(v).iter().filter(|&&u| mask[u]).count()
}

/// Removes the leaves of the subtree induced by `mask`. A lone vertex counts
/// as a leaf, matching the convention used by [`leaves`].
fn peel_leaves(g: &Graph, mask: &mut [bool]) {
    let remaining = mask.iter().filter(|&&m| m).count();
    let doomed: Vec<Vertex> = g
        .vertices()
        .filter(|&v| mask[v] && (remaining == 1 || induced_degree(g, mask, v) <= 1))
        .collect();
    for v in doomed {
        mask[v] = false;
    }
}

/// The subgraph induced by `mask` of a tree is a path (or empty).
fn induces_path(g: &Graph, mask: &[bool]) -> bool {
    let kept: Vec<Vertex> = g.vertices().filter(|&v| mask[v]).collect();
    if kept.is_empty() {
        return true;
    }
    let edges: usize = kept.iter().map(|&v| induced_degree(g, mask, v)).sum::<usize>() / 2;
    edges + 1 == kept.len() && kept.iter().all(|&v| induced_degree(g, mask, v) <= 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_malformed_edge_lists() {
        assert!(Graph::from_edges(0, &[]).is_err());
        assert!(Graph::from_edges(2, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(2, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 1)]).is_err());
        assert!(matches!(
            Graph::from_edges(2, &[(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, .. })
        ));
    }

    #[test]
    fn cycle_is_connected_but_not_a_tree() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(g.is_connected());
        assert!(!g.is_tree());
        assert!(!g.is_caterpillar());
        assert_eq!(g.neighbors(0), &[1, 3]);
    }

    #[test]
    fn removing_a_leaf_relabels_densely() {
        let g = build_family(&FamilySpec::Path(4)).unwrap();
        let (h, map) = g.without_vertex(0).unwrap();
        assert_eq!(h.vertex_count(), 3);
        assert_eq!(map, vec![None, Some(0), Some(1), Some(2)]);
        assert!(h.has_edge(0, 1) && h.has_edge(1, 2));
        assert!(g.without_vertex(1).is_err());
    }

    #[test]
    fn caterpillar_and_lobster_recognition() {
        let cat = build_family(&FamilySpec::Caterpillar(vec![1, 0, 2, 1])).unwrap();
        assert!(cat.is_caterpillar() && cat.is_lobster());
        let lob = build_family(&FamilySpec::Lobster(vec![vec![1, 1, 1, 1]])).unwrap();
        assert!(!lob.is_caterpillar() && lob.is_lobster());
        let ary = |height| {
            build_family(&FamilySpec::Ary {
                branching: 2,
                height,
            })
            .unwrap()
        };
        assert!(!ary(3).is_caterpillar() && ary(3).is_lobster());
        assert!(!ary(4).is_lobster());
        for n in 1..4 {
            assert!(build_family(&FamilySpec::Path(n)).unwrap().is_caterpillar());
        }
    }
}
