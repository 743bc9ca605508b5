use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};
use crate::Vertex;

/// Largest graph a family constructor will materialise.
const MAX_FAMILY_VERTICES: usize = 1 << 24;

/// Parameters of one of the generated graph families.
///
/// `Display` renders the text DSL (`path:7`, `star:5`, `ary:2,8`,
/// `cat:1,0,2,1`, `lobster:(1,2),(0),(3)`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilySpec {
    /// Path on `n ≥ 1` vertices.
    Path(usize),
    /// Star on `n ≥ 2` vertices (one centre, `n − 1` leaves).
    Star(usize),
    /// Complete `branching`-ary tree of the given height.
    Ary { branching: usize, height: usize },
    /// Spine with the given number of pendant leaves on each spine vertex.
    Caterpillar(Vec<usize>),
    /// Spine whose vertices carry legs; a leg is a middle vertex holding the
    /// given number of leaves (zero makes the leg a plain leaf).
    Lobster(Vec<Vec<usize>>),
}

impl FamilySpec {
    /// Number of vertices the family produces, without building it.
    pub fn vertex_count(&self) -> Option<usize> {
        match self {
            FamilySpec::Path(n) | FamilySpec::Star(n) => Some(*n),
            FamilySpec::Ary { branching, height } => ary_vertex_count(*branching, *height),
            FamilySpec::Caterpillar(counts) => Some(counts.len() + counts.iter().sum::<usize>()),
            FamilySpec::Lobster(spine) => Some(
                spine.len()
                    + spine
                        .iter()
                        .map(|legs| legs.len() + legs.iter().sum::<usize>())
                        .sum::<usize>(),
            ),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidFamily(format!("{self}: {msg}")));
        match self {
            FamilySpec::Path(0) => return bad("path needs at least 1 vertex"),
            FamilySpec::Star(n) if *n < 2 => return bad("star needs at least 2 vertices"),
            FamilySpec::Ary { branching: 0, .. } => return bad("branching must be at least 1"),
            FamilySpec::Caterpillar(c) if c.is_empty() => return bad("spine must be nonempty"),
            FamilySpec::Lobster(s) if s.is_empty() => return bad("spine must be nonempty"),
            _ => {}
        }
        match self.vertex_count() {
            Some(n) if n <= MAX_FAMILY_VERTICES => Ok(()),
            _ => bad("too many vertices to materialise"),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[usize]| {
            xs.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            FamilySpec::Path(n) => write!(f, "path:{n}"),
            FamilySpec::Star(n) => write!(f, "star:{n}"),
            FamilySpec::Ary { branching, height } => write!(f, "ary:{branching},{height}"),
            FamilySpec::Caterpillar(counts) => write!(f, "cat:{}", join(counts)),
            FamilySpec::Lobster(spine) => {
                let legs: Vec<String> = spine.iter().map(|l| format!("({})", join(l))).collect();
                write!(f, "lobster:{}", legs.join(","))
            }
        }
    }
}

/// `(b^(h+1) − 1) / (b − 1)`, or `h + 1` for `b = 1`; `None` on overflow.
pub fn ary_vertex_count(branching: usize, height: usize) -> Option<usize> {
    let mut total: usize = 0;
    let mut level: usize = 1;
    for _ in 0..=height {
        total = total.checked_add(level)?;
        level = level.checked_mul(branching)?;
    }
    Some(total)
}

/// Builds the graph described by `spec` with BFS vertex numbering.
pub fn build_family(spec: &FamilySpec) -> Result<Graph> {
    spec.validate()?;
    let n = spec.vertex_count().expect("validated");
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    match spec {
        FamilySpec::Path(n) => edges.extend((1..*n).map(|v| (v - 1, v))),
        FamilySpec::Star(n) => edges.extend((1..*n).map(|v| (0, v))),
        FamilySpec::Ary { branching, .. } => edges.extend((1..n).map(|v| ((v - 1) / branching, v))),
        FamilySpec::Caterpillar(counts) => {
            let spine = counts.len();
            edges.extend((1..spine).map(|v| (v - 1, v)));
            let mut next = spine;
            for (s, &k) in counts.iter().enumerate() {
                for _ in 0..k {
                    edges.push((s, next));
                    next += 1;
                }
            }
        }
        FamilySpec::Lobster(legs) => {
            let spine = legs.len();
            edges.extend((1..spine).map(|v| (v - 1, v)));
            let mut next = spine;
            for (s, leg_list) in legs.iter().enumerate() {
                for &k in leg_list {
                    let middle = next;
                    edges.push((s, middle));
                    next += 1;
                    for _ in 0..k {
                        edges.push((middle, next));
                        next += 1;
                    }
                }
            }
        }
    }
    let graph = Graph::from_edges(n, &edges)?;
    // Path, star and ary are already in BFS order from vertex 0; the
    // spine-based families get renumbered from the first spine vertex.
    let graph = match spec {
        FamilySpec::Caterpillar(_) | FamilySpec::Lobster(_) => graph.relabeled_bfs(0)?,
        _ => graph,
    };
    Ok(graph.with_family(spec.clone()))
}

/// Levels and parents of a graph rooted at `root`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedView {
    pub root: Vertex,
    pub level: Vec<usize>,
    pub parent: Vec<Option<Vertex>>,
}

impl RootedView {
    /// BFS levels from `root`; parents are the smallest-id neighbour one
    /// level up.
    pub fn new(g: &Graph, root: Vertex) -> Result<Self> {
        g.check_vertex(root)?;
        let n = g.vertex_count();
        let mut level = vec![usize::MAX; n];
        let mut parent = vec![None; n];
        level[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                if level[v] == usize::MAX {
                    level[v] = level[u] + 1;
                    parent[v] = Some(u);
                    queue.push_back(v);
                }
            }
        }
        Ok(RootedView {
            root,
            level,
            parent,
        })
    }

    /// The natural root of a rooted family: the tree root of `Ary`, the
    /// centre of `Star`, vertex 0 otherwise.
    pub fn for_family(g: &Graph) -> Result<Self> {
        RootedView::new(g, 0)
    }

    pub fn height(&self) -> usize {
        self.level.iter().copied().max().unwrap_or(0)
    }

    /// Vertices at `level`, increasing id.
    pub fn at_level(&self, level: usize) -> Vec<Vertex> {
        (0..self.level.len())
            .filter(|&v| self.level[v] == level)
            .collect()
    }

    /// Path from `v` up to the root, starting with `v`.
    pub fn ancestors(&self, v: Vertex) -> Vec<Vertex> {
        let mut out = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent[cur] {
            out.push(p);
            cur = p;
        }
        out
    }

    /// Vertices of the subtree hanging below `v` (including `v`).
    pub fn subtree(&self, g: &Graph, v: Vertex) -> Vec<Vertex> {
        let mut out = vec![v];
        let mut i = 0;
        while i < out.len() {
            let u = out[i];
            out.extend(
                g.neighbors(u)
                    .iter()
                    .copied()
                    .filter(|&w| self.parent[w] == Some(u)),
            );
            i += 1;
        }
        out.sort_unstable();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{diameter_and_longest_path, leaves};

    #[test]
    fn ary_counts() {
        let g = build_family(&FamilySpec::Ary {
            branching: 2,
            height: 3,
        })
        .unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (15, 14));
        assert_eq!(ary_vertex_count(1, 4), Some(5));
        assert_eq!(ary_vertex_count(3, 2), Some(13));
        assert_eq!(ary_vertex_count(usize::MAX, 3), None);
        let rooted = RootedView::for_family(&g).unwrap();
        assert_eq!(rooted.height(), 3);
        assert_eq!(rooted.at_level(3).len(), 8);
        assert_eq!(rooted.ancestors(14), vec![14, 6, 2, 0]);
        assert_eq!(rooted.subtree(&g, 2), vec![2, 5, 6, 11, 12, 13, 14]);
    }

    #[test]
    fn star_shape() {
        let g = build_family(&FamilySpec::Star(5)).unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(leaves(&g).len(), 4);
        assert_eq!(diameter_and_longest_path(&g).0, 2);
    }

    #[test]
    fn caterpillar_is_bfs_numbered_from_spine_start() {
        let g = build_family(&FamilySpec::Caterpillar(vec![1, 0, 2, 1])).unwrap();
        assert_eq!(g.vertex_count(), 8);
        assert!(g.is_tree());
        let rooted = RootedView::new(&g, 0).unwrap();
        let levels = rooted.level.clone();
        let sorted = {
            let mut l = levels.clone();
            l.sort();
            l
        };
        assert_eq!(levels, sorted, "BFS numbering has nondecreasing levels");
        assert_eq!(diameter_and_longest_path(&g).0, 5);
    }

    #[test]
    fn lobster_shape_and_display() {
        let spec = FamilySpec::Lobster(vec![vec![1, 2], vec![0], vec![3]]);
        assert_eq!(spec.to_string(), "lobster:(1,2),(0),(3)");
        let g = build_family(&spec).unwrap();
        assert_eq!(g.vertex_count(), 3 + 2 + 3 + 1 + 1 + 3);
        assert!(g.is_lobster());
        let zero_legs = build_family(&FamilySpec::Lobster(vec![vec![0, 0], vec![0]])).unwrap();
        assert!(zero_legs.is_caterpillar());
        assert_eq!(FamilySpec::Caterpillar(vec![1, 0]).to_string(), "cat:1,0");
    }

    #[test]
    fn invalid_parameters() {
        for spec in [
            FamilySpec::Path(0),
            FamilySpec::Star(1),
            FamilySpec::Ary {
                branching: 0,
                height: 2,
            },
            FamilySpec::Caterpillar(vec![]),
            FamilySpec::Lobster(vec![]),
            FamilySpec::Ary {
                branching: 2,
                height: 60,
            },
        ] {
            assert!(
                matches!(build_family(&spec), Err(Error::InvalidFamily(_))),
                "{spec}"
            );
        }
    }
}
