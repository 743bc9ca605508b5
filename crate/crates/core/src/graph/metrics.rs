use std::collections::VecDeque;

use super::Graph;
use crate::error::Result;
use crate::Vertex;

/// Hop distance from `t` to every vertex.
pub fn distances_from(g: &Graph, t: Vertex) -> Result<Vec<usize>> {
    g.check_vertex(t)?;
    Ok(bfs(g, t).0)
}

/// BFS distances and parent pointers (smallest-id discoverer).
fn bfs(g: &Graph, source: Vertex) -> (Vec<usize>, Vec<Option<Vertex>>) {
    let n = g.vertex_count();
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![None; n];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                parent[v] = Some(u);
                queue.push_back(v);
            }
        }
    }
    (dist, parent)
}

/// Distance matrix by one BFS per vertex.
pub fn all_pairs_distances(g: &Graph) -> Vec<Vec<usize>> {
    g.vertices().map(|v| bfs(g, v).0).collect()
}

fn farthest(dist: &[usize]) -> Vertex {
    // max_by_key returns the last maximum; we want the smallest id.
    let best = dist.iter().copied().max().unwrap_or(0);
    dist.iter().position(|&d| d == best).unwrap_or(0)
}

fn walk_back(parent: &[Option<Vertex>], end: Vertex) -> Vec<Vertex> {
    let mut path = vec![end];
    let mut cur = end;
    while let Some(p) = parent[cur] {
        path.push(p);
        cur = p;
    }
    path
}

/// Diameter together with a shortest path of that length (`d + 1` vertices).
///
/// Trees use the double-BFS sweep from vertex 0; other graphs take the
/// lexicographically first farthest pair from all-pairs BFS.
pub fn diameter_and_longest_path(g: &Graph) -> (usize, Vec<Vertex>) {
    let (start, far_dist, parent) = if g.is_tree() {
        let a = farthest(&bfs(g, 0).0);
        let (dist, parent) = bfs(g, a);
        (a, dist, parent)
    } else {
        let mut best = (0, 0);
        let mut best_d = 0;
        for u in g.vertices() {
            let (dist, _) = bfs(g, u);
            for (v, &d) in dist.iter().enumerate() {
                if d > best_d {
                    best_d = d;
                    best = (u, v);
                }
            }
        }
        let (dist, parent) = bfs(g, best.0);
        (best.0, dist, parent)
    };
    let end = farthest(&far_dist);
    // walk_back yields end..=start; orient from the smaller endpoint.
    let mut path = walk_back(&parent, end);
    debug_assert_eq!(path.last(), Some(&start));
    if path[0] > path[path.len() - 1] {
        path.reverse();
    }
    (far_dist[end], path)
}

/// Degree-one vertices. A single-vertex graph counts its vertex as a leaf.
pub fn leaves(g: &Graph) -> Vec<Vertex> {
    if g.vertex_count() == 1 {
        return vec![0];
    }
    g.vertices().filter(|&v| g.degree(v) == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_family, FamilySpec};

    fn diameter_oracle(g: &Graph) -> usize {
        all_pairs_distances(g)
            .iter()
            .flat_map(|row| row.iter().copied())
            .max()
            .unwrap()
    }

    #[test]
    fn distances_on_star_and_path() {
        let star = build_family(&FamilySpec::Star(5)).unwrap();
        assert_eq!(distances_from(&star, 0).unwrap(), vec![0, 1, 1, 1, 1]);
        let path = build_family(&FamilySpec::Path(5)).unwrap();
        assert_eq!(distances_from(&path, 0).unwrap(), vec![0, 1, 2, 3, 4]);
        assert!(distances_from(&path, 5).is_err());
    }

    #[test]
    fn leaf_census_of_binary_tree() {
        // Leaf at the far right of T_8; distance census must match the
        // closed-form count of vertices per distance.
        let g = build_family(&FamilySpec::Ary {
            branching: 2,
            height: 8,
        })
        .unwrap();
        let t = g.vertex_count() - 1;
        let dist = distances_from(&g, t).unwrap();
        let mut census = vec![0usize; 17];
        for d in dist {
            census[d] += 1;
        }
        // Going up j levels from the leaf then down into the sibling subtree
        // of height j − 1 gives 2^(d − j − 1) vertices at distance d.
        let mut expected = vec![0usize; 17];
        for j in 0..=8usize {
            expected[j] += 1;
            for i in 0..j {
                expected[j + 1 + i] += 1 << i;
            }
        }
        assert_eq!(census, expected);
        assert_eq!(census.iter().sum::<usize>(), 511);
    }

    #[test]
    fn diameter_examples() {
        let path = build_family(&FamilySpec::Path(7)).unwrap();
        assert_eq!(diameter_and_longest_path(&path), (6, (0..7).collect()));
        assert_eq!(
            diameter_and_longest_path(&build_family(&FamilySpec::Star(6)).unwrap()).0,
            2
        );
        let lobster = build_family(&FamilySpec::Lobster(vec![vec![2], vec![], vec![1, 1]])).unwrap();
        let (d, p) = diameter_and_longest_path(&lobster);
        assert_eq!(d, diameter_oracle(&lobster));
        assert_eq!(d, 6);
        assert_eq!(p.len(), d + 1);
        assert!(p.windows(2).all(|w| lobster.has_edge(w[0], w[1])));

        let cycle = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let (d, p) = diameter_and_longest_path(&cycle);
        assert_eq!((d, p.len()), (2, 3));
    }

    #[test]
    fn leaves_examples() {
        let path = build_family(&FamilySpec::Path(4)).unwrap();
        assert_eq!(leaves(&path), vec![0, 3]);
        assert_eq!(leaves(&build_family(&FamilySpec::Path(1)).unwrap()), vec![0]);
        let t3 = build_family(&FamilySpec::Ary {
            branching: 2,
            height: 3,
        })
        .unwrap();
        assert_eq!(leaves(&t3).len(), 8);
        let cat = build_family(&FamilySpec::Caterpillar(vec![0, 2, 0])).unwrap();
        let degree_scan: Vec<_> = cat.vertices().filter(|&v| cat.degree(v) == 1).collect();
        assert_eq!(leaves(&cat), degree_scan);
        assert_eq!(leaves(&cat).len(), 4);
    }
}
