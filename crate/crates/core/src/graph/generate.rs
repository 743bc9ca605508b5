//! Random and exhaustive graph generators for property checks.

use std::collections::BTreeSet;

use rand::Rng;

use super::{build_family, FamilySpec, Graph};
use crate::Vertex;

/// Uniform labelled tree on `n` vertices via a random Prüfer sequence.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    assert!(n >= 1);
    if n <= 2 {
        return build_family(&FamilySpec::Path(n)).expect("valid path");
    }
    let code: Vec<Vertex> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    prufer_tree(n, &code)
}

/// Decodes a Prüfer sequence of length `n − 2`.
pub fn prufer_tree(n: usize, code: &[Vertex]) -> Graph {
    assert_eq!(code.len() + 2, n);
    let mut degree = vec![1usize; n];
    for &c in code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut leaves: BTreeSet<Vertex> = (0..n).filter(|&v| degree[v] == 1).collect();
    for &c in code {
        let leaf = leaves.pop_first().expect("a leaf always exists");
        edges.push((leaf, c));
        degree[c] -= 1;
        if degree[c] == 1 {
            leaves.insert(c);
        }
    }
    let mut rest = leaves.into_iter();
    let (a, b) = (rest.next().unwrap(), rest.next().unwrap());
    edges.push((a, b));
    Graph::from_edges(n, &edges).expect("Prüfer decoding yields a tree")
}

/// Random caterpillar with at most `max_vertices` vertices and spine length
/// at least one.
pub fn random_caterpillar_spec<R: Rng + ?Sized>(max_vertices: usize, rng: &mut R) -> FamilySpec {
    assert!(max_vertices >= 1);
    let spine = rng.gen_range(1..=max_vertices.div_ceil(2).max(1));
    let mut counts = vec![0usize; spine];
    let budget = rng.gen_range(0..=max_vertices - spine);
    for _ in 0..budget {
        counts[rng.gen_range(0..spine)] += 1;
    }
    FamilySpec::Caterpillar(counts)
}

/// AHU canonical string of a tree rooted at `root`.
fn rooted_code(g: &Graph, root: Vertex, parent: Option<Vertex>) -> String {
    let mut children: Vec<String> = g
        .neighbors(root)
        .iter()
        .filter(|&&v| Some(v) != parent)
        .map(|&v| rooted_code(g, v, Some(root)))
        .collect();
    children.sort();
    format!("({})", children.concat())
}

/// Isomorphism-invariant code of a tree: the smallest rooted code over its
/// centre vertices.
pub fn tree_canonical_code(g: &Graph) -> String {
    debug_assert!(g.is_tree());
    let mut degree: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut remaining = g.vertex_count();
    let mut layer: Vec<Vertex> = g.vertices().filter(|&v| degree[v] <= 1).collect();
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            degree[leaf] = 0;
            for &u in g.neighbors(leaf) {
                if degree[u] > 0 {
                    degree[u] -= 1;
                    if degree[u] == 1 {
                        next.push(u);
                    }
                }
            }
        }
        layer = next;
    }
    let centres: Vec<Vertex> = if g.vertex_count() <= 2 {
        g.vertices().collect()
    } else {
        layer
    };
    centres
        .into_iter()
        .map(|c| rooted_code(g, c, None))
        .min()
        .expect("nonempty tree")
}

/// One representative of every isomorphism class of trees on `n` vertices,
/// in order of canonical code.
pub fn nonisomorphic_trees(n: usize) -> Vec<Graph> {
    assert!((1..=10).contains(&n), "exhaustive tree enumeration is for small n");
    if n <= 2 {
        return vec![build_family(&FamilySpec::Path(n)).unwrap()];
    }
    let mut seen = std::collections::BTreeMap::new();
    let mut code = vec![0; n - 2];
    loop {
        let tree = prufer_tree(n, &code);
        seen.entry(tree_canonical_code(&tree)).or_insert(tree);
        // odometer increment
        let mut i = 0;
        loop {
            if i == code.len() {
                return seen.into_values().collect();
            }
            code[i] += 1;
            if code[i] < n {
                break;
            }
            code[i] = 0;
            i += 1;
        }
    }
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// Small test corpus: family members plus a few non-trees (the validation
/// graphs), all with at most `max_vertices` vertices.
pub fn corpus(max_vertices: usize) -> Vec<Graph> {
    let specs = [
        FamilySpec::Path(3),
        FamilySpec::Path(5),
        FamilySpec::Path(7),
        FamilySpec::Path(9),
        FamilySpec::Path(12),
        FamilySpec::Star(4),
        FamilySpec::Star(6),
        FamilySpec::Star(9),
        FamilySpec::Ary {
            branching: 2,
            height: 2,
        },
        FamilySpec::Ary {
            branching: 3,
            height: 2,
        },
        FamilySpec::Caterpillar(vec![1, 0, 2, 1]),
        FamilySpec::Caterpillar(vec![2, 1, 2]),
        FamilySpec::Caterpillar(vec![1, 1, 1, 1, 1, 1]),
        FamilySpec::Lobster(vec![vec![1, 1, 1, 1]]),
        FamilySpec::Lobster(vec![vec![1], vec![0], vec![2]]),
        FamilySpec::Lobster(vec![vec![1, 2], vec![0], vec![3]]),
    ];
    let mut graphs: Vec<Graph> = specs
        .iter()
        .map(|s| build_family(s).expect("corpus specs are valid"))
        .collect();
    graphs.extend([cycle(5), cycle(6), cycle(8), complete(4), complete(5)]);
    // Two cycles sharing a vertex, and a cycle with a pendant path.
    graphs.push(
        Graph::from_edges(7, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 5), (5, 0), (5, 6)])
            .unwrap(),
    );
    graphs.push(Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5), (5, 6)]).unwrap());
    graphs.retain(|g| g.vertex_count() <= max_vertices);
    graphs
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn tree_counts_match_oeis() {
        // Number of unlabelled trees: A000055.
        let counts: Vec<usize> = (1..=8).map(|n| nonisomorphic_trees(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23]);
    }

    #[test]
    fn random_generators_produce_trees() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..12 {
            let g = random_tree(n, &mut rng);
            assert!(g.is_tree() && g.vertex_count() == n);
        }
        for _ in 0..50 {
            let spec = random_caterpillar_spec(13, &mut rng);
            let g = build_family(&spec).unwrap();
            assert!(g.vertex_count() <= 13);
            assert!(g.is_caterpillar());
        }
    }

    #[test]
    fn canonical_code_is_label_invariant() {
        let a = build_family(&FamilySpec::Caterpillar(vec![1, 0, 2, 1])).unwrap();
        let b = a.relabeled_bfs(5).unwrap();
        assert_eq!(tree_canonical_code(&a), tree_canonical_code(&b));
        let c = build_family(&FamilySpec::Path(8)).unwrap();
        assert_ne!(tree_canonical_code(&a), tree_canonical_code(&c));
    }

    #[test]
    fn corpus_graphs_are_connected() {
        for g in corpus(12) {
            assert!(g.is_connected());
            assert!(g.vertex_count() <= 12);
        }
    }
}
