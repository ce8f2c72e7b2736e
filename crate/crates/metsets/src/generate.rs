//! Seeded random instances: uniform m-edge graphs and trees with a prescribed
//! leaf count.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, GraphError};

const CONNECT_RETRY_CAP: u64 = 1000;
const LEAF_RETRY_CAP: u64 = 1_000_000;

/// Uniformly random simple graph with `n` vertices and `m` edges.
/// Deterministic for a fixed seed.
pub fn random_graph(n: usize, m: usize, seed: u64) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::EmptyGraph);
    }
    let max = n * (n - 1) / 2;
    if m > max {
        return Err(GraphError::EdgeCountOutOfRange { m, max });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(sample_graph(n, m, max, &mut rng))
}

/// Like [`random_graph`] but re-samples until the graph is connected,
/// giving up after 1000 attempts.
pub fn random_connected_graph(n: usize, m: usize, seed: u64) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::EmptyGraph);
    }
    let max = n * (n - 1) / 2;
    if m > max {
        return Err(GraphError::EdgeCountOutOfRange { m, max });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..CONNECT_RETRY_CAP {
        let g = sample_graph(n, m, max, &mut rng);
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(GraphError::RetryCapExceeded(CONNECT_RETRY_CAP))
}

fn sample_graph(n: usize, m: usize, max: usize, rng: &mut ChaCha8Rng) -> Graph {
    let picks = rand::seq::index::sample(rng, max, m);
    let edges: Vec<(usize, usize)> = picks.iter().map(unrank_edge).collect();
    Graph::new(n, &edges).expect("sampled edges are valid by construction")
}

/// Maps an index in `0..n(n-1)/2` to the edge `{u, v}` with `u < v`, ordering
/// edges as (1,2), (1,3), (2,3), (1,4), ...
fn unrank_edge(idx: usize) -> (usize, usize) {
    // Find the largest v with (v-1)(v-2)/2 <= idx; u follows. The float
    // sqrt only seeds the search, the loops below correct any rounding.
    let mut v = (((8 * idx + 1) as f64).sqrt() as usize).div_ceil(2) + 1;
    while (v - 1) * (v - 2) / 2 > idx {
        v -= 1;
    }
    while v * (v - 1) / 2 <= idx {
        v += 1;
    }
    let u = idx - (v - 1) * (v - 2) / 2 + 1;
    (u, v)
}

/// Random tree on `n >= 3` vertices with exactly `leaves` degree-1 vertices,
/// uniform within that class. Prüfer sequences are drawn until the leaf count
/// matches (the leaves of the decoded tree are precisely the vertices absent
/// from the sequence), capped at 10^6 attempts.
pub fn random_tree(n: usize, leaves: usize, seed: u64) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::TreeTooSmall(n));
    }
    if leaves < 2 || leaves > n - 1 {
        return Err(GraphError::InfeasibleLeafCount { n, leaves });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // The extreme classes are single shapes; rejection would practically
    // never hit them, so sample them directly (uniformly within the class).
    if leaves == n - 1 {
        let center = rng.random_range(1..=n);
        let edges: Vec<(usize, usize)> =
            (1..=n).filter(|&v| v != center).map(|v| (center, v)).collect();
        return Ok(Graph::new(n, &edges).unwrap());
    }
    if leaves == 2 {
        let mut order: Vec<usize> = (1..=n).collect();
        order.shuffle(&mut rng);
        let edges: Vec<(usize, usize)> =
            order.windows(2).map(|w| (w[0], w[1])).collect();
        return Ok(Graph::new(n, &edges).unwrap());
    }
    let mut present = vec![false; n + 1];
    for _ in 0..LEAF_RETRY_CAP {
        let seq: Vec<usize> = (0..n - 2).map(|_| rng.random_range(1..=n)).collect();
        present.iter_mut().for_each(|p| *p = false);
        for &v in &seq {
            present[v] = true;
        }
        let absent = (1..=n).filter(|&v| !present[v]).count();
        if absent == leaves {
            return Ok(tree_from_pruefer(n, &seq));
        }
    }
    Err(GraphError::RetryCapExceeded(LEAF_RETRY_CAP))
}

/// Decodes a Prüfer sequence over `1..=n` (length `n-2`) into a tree.
fn tree_from_pruefer(n: usize, seq: &[usize]) -> Graph {
    debug_assert_eq!(seq.len(), n - 2);
    let mut degree = vec![1usize; n + 1];
    for &v in seq {
        degree[v] += 1;
    }
    // min-heap of current leaves
    use std::cmp::Reverse;
    use std::collections::BinaryHeap;
    let mut leaves: BinaryHeap<Reverse<usize>> = (1..=n)
        .filter(|&v| degree[v] == 1)
        .map(Reverse)
        .collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &a in seq {
        let Reverse(leaf) = leaves.pop().expect("a leaf always remains");
        edges.push((leaf, a));
        degree[leaf] -= 1;
        degree[a] -= 1;
        if degree[a] == 1 {
            leaves.push(Reverse(a));
        }
    }
    let Reverse(u) = leaves.pop().unwrap();
    let Reverse(v) = leaves.pop().unwrap();
    edges.push((u, v));
    Graph::new(n, &edges).expect("Prüfer decoding yields a valid tree")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn leaf_count(g: &Graph) -> usize {
        g.vertices().filter(|&v| g.degree(v) == 1).count()
    }

    #[test]
    fn unrank_covers_all_pairs() {
        let n = 9;
        let mut seen = std::collections::BTreeSet::new();
        for idx in 0..n * (n - 1) / 2 {
            let (u, v) = unrank_edge(idx);
            assert!(1 <= u && u < v && v <= n, "bad edge ({u},{v}) at {idx}");
            assert!(seen.insert((u, v)));
        }
        assert_eq!(seen.len(), n * (n - 1) / 2);
    }

    #[test]
    fn graph_counts_and_determinism() {
        let g = random_graph(40, 100, 680).unwrap();
        assert_eq!(g.vertex_count(), 40);
        assert_eq!(g.edge_count(), 100);

        let h = random_graph(40, 100, 680).unwrap();
        assert_eq!(g.edges(), h.edges());

        let complete = random_graph(5, 10, 1).unwrap();
        assert_eq!(complete.edge_count(), 10);
        assert!(complete.is_connected());

        assert_eq!(
            random_graph(4, 7, 1),
            Err(GraphError::EdgeCountOutOfRange { m: 7, max: 6 })
        );
    }

    #[test]
    fn connected_resampling() {
        for seed in 0..20 {
            let g = random_connected_graph(12, 11, seed).unwrap();
            assert!(g.is_connected());
        }
        // 2 edges can never connect 4 vertices
        assert_eq!(
            random_connected_graph(4, 2, 3),
            Err(GraphError::RetryCapExceeded(1000))
        );
    }

    #[test]
    fn tree_shapes() {
        let path = random_tree(3, 2, 5).unwrap();
        assert_eq!(path.edge_count(), 2);
        assert_eq!(leaf_count(&path), 2);

        let star = random_tree(10, 9, 5).unwrap();
        assert_eq!(star.edge_count(), 9);
        assert_eq!(leaf_count(&star), 9);
        assert!(star.vertices().any(|v| star.degree(v) == 9));

        let t = random_tree(60, 25, 1711).unwrap();
        assert_eq!(t.vertex_count(), 60);
        assert_eq!(t.edge_count(), 59);
        assert_eq!(leaf_count(&t), 25);
        assert!(t.is_connected());

        let again = random_tree(60, 25, 1711).unwrap();
        assert_eq!(t.edges(), again.edges());
    }

    #[test]
    fn tree_rejects_bad_parameters() {
        assert_eq!(random_tree(2, 2, 0), Err(GraphError::TreeTooSmall(2)));
        assert_eq!(
            random_tree(5, 1, 0),
            Err(GraphError::InfeasibleLeafCount { n: 5, leaves: 1 })
        );
        assert_eq!(
            random_tree(5, 5, 0),
            Err(GraphError::InfeasibleLeafCount { n: 5, leaves: 5 })
        );
    }

    #[test]
    fn trees_are_trees() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..30 {
            let n = rng.random_range(3..=30);
            let leaves = rng.random_range(2..=n - 1);
            match random_tree(n, leaves, rng.random()) {
                Ok(t) => {
                    assert_eq!(t.edge_count(), n - 1);
                    assert!(t.is_connected());
                    assert_eq!(leaf_count(&t), leaves);
                }
                Err(GraphError::RetryCapExceeded(_)) => {
                    // extreme leaf counts may legitimately exhaust retries
                }
                Err(other) => panic!("unexpected error {other}"),
            }
        }
    }
}
