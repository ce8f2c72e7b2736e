//! Small named graphs used throughout tests and the guide.

use crate::graph::Graph;

/// Six-vertex graph whose non-edges are exactly
/// {1,3}, {2,3}, {2,6}, {3,4}, {3,5}. It has 47 metric subsets.
pub fn g5() -> Graph {
    let edges = [
        (1, 2),
        (1, 4),
        (1, 5),
        (1, 6),
        (2, 4),
        (2, 5),
        (3, 6),
        (4, 5),
        (4, 6),
        (5, 6),
    ];
    Graph::new(6, &edges).unwrap()
}

/// Path graph on `n` vertices: 1 - 2 - ... - n.
pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|v| (v, v + 1)).collect();
    Graph::new(n, &edges).unwrap()
}

/// Cycle on `n >= 3` vertices: 1 - 2 - ... - n - 1.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    let mut edges: Vec<_> = (1..n).map(|v| (v, v + 1)).collect();
    edges.push((1, n));
    Graph::new(n, &edges).unwrap()
}

/// Complete graph on `n` vertices.
pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in (u + 1)..=n {
            edges.push((u, v));
        }
    }
    Graph::new(n, &edges).unwrap()
}
