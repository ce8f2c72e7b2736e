//! Simple undirected graphs, all-pairs distances and the plain-text format.

use std::collections::VecDeque;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex count must be at least 1")]
    EmptyGraph,
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("endpoint {vertex} out of range 1..={n}")]
    EndpointOutOfRange { vertex: usize, n: usize },
    #[error("edge count {m} out of range 0..={max}")]
    EdgeCountOutOfRange { m: usize, max: usize },
    #[error("tree must have n >= 3 vertices, got {0}")]
    TreeTooSmall(usize),
    #[error("leaf count {leaves} infeasible for {n} vertices (want 2..=n-1)")]
    InfeasibleLeafCount { n: usize, leaves: usize },
    #[error("gave up after {0} sampling attempts")]
    RetryCapExceeded(u64),
    #[error("malformed header {0:?}: expected \"n m\"")]
    MalformedHeader(String),
    #[error("malformed edge line {0:?}: expected \"u v\"")]
    MalformedEdgeLine(String),
    #[error("header announced {expected} edges, file has {found}")]
    EdgeCountMismatch { expected: usize, found: usize },
}

/// A simple undirected graph on vertices `1..=n`.
///
/// Immutable after construction; adjacency lists are kept sorted.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Validates and builds a graph. Edges may come in either orientation but
    /// are stored with `u < v`, sorted lexicographically.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::EmptyGraph);
        }
        let mut canon: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            for v in [a, b] {
                if v < 1 || v > n {
                    return Err(GraphError::EndpointOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            canon.push((a.min(b), a.max(b)));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adjacency = vec![Vec::new(); n + 1];
        for &(u, v) in &canon {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: canon,
            adjacency,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbors of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        1..=self.n
    }

    /// All-pairs shortest-path hop counts via one BFS per vertex.
    pub fn distances(&self) -> DistanceMatrix {
        let n = self.n;
        let mut dist = vec![DistanceMatrix::INFINITY; (n + 1) * (n + 1)];
        let mut queue = VecDeque::new();
        for s in 1..=n {
            let row = s * (n + 1);
            dist[row + s] = 0;
            queue.clear();
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                let dv = dist[row + v];
                for &u in self.neighbors(v) {
                    if dist[row + u] == DistanceMatrix::INFINITY {
                        dist[row + u] = dv + 1;
                        queue.push_back(u);
                    }
                }
            }
        }
        DistanceMatrix { n, dist }
    }

    /// True iff every vertex is reachable from vertex 1.
    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n + 1];
        let mut queue = VecDeque::from([1usize]);
        seen[1] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &u in self.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    queue.push_back(u);
                }
            }
        }
        count == self.n
    }

    /// Parses the plain-text format: header `n m`, then `m` lines `u v`.
    /// Lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().unwrap_or("");
        let mut head = header.split_whitespace();
        let (n, m) = match (
            head.next().and_then(|t| t.parse::<usize>().ok()),
            head.next().and_then(|t| t.parse::<usize>().ok()),
            head.next(),
        ) {
            (Some(n), Some(m), None) => (n, m),
            _ => return Err(GraphError::MalformedHeader(header.to_string())),
        };
        let mut edges = Vec::with_capacity(m);
        for line in lines {
            let mut it = line.split_whitespace();
            let (u, v) = match (
                it.next().and_then(|t| t.parse::<usize>().ok()),
                it.next().and_then(|t| t.parse::<usize>().ok()),
                it.next(),
            ) {
                (Some(u), Some(v), None) => (u, v),
                _ => return Err(GraphError::MalformedEdgeLine(line.to_string())),
            };
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(GraphError::EdgeCountMismatch {
                expected: m,
                found: edges.len(),
            });
        }
        Graph::new(n, &edges)
    }

    /// Writes the canonical text form: `n m` header, edges sorted with `u < v`.
    pub fn write(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n, self.edges.len())
    }
}

/// All-pairs shortest-path lengths. Unreachable pairs carry
/// [`DistanceMatrix::INFINITY`], a sentinel larger than any real distance.
#[derive(Clone)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u32>,
}

impl DistanceMatrix {
    pub const INFINITY: u32 = u32::MAX;

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Hop count between `u` and `v`, or [`Self::INFINITY`].
    pub fn get(&self, u: usize, v: usize) -> u32 {
        debug_assert!((1..=self.n).contains(&u) && (1..=self.n).contains(&v));
        self.dist[u * (self.n + 1) + v]
    }

    /// `Some(d)` for reachable pairs, `None` otherwise.
    pub fn finite(&self, u: usize, v: usize) -> Option<u32> {
        match self.get(u, v) {
            Self::INFINITY => None,
            d => Some(d),
        }
    }

    pub fn is_reachable(&self, u: usize, v: usize) -> bool {
        self.get(u, v) != Self::INFINITY
    }
}
