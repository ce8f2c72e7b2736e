//! Geodesic and chordless-path enumeration, and geodesic intervals.

use thiserror::Error;

use crate::graph::{DistanceMatrix, Graph};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PathError {
    #[error("vertices {0} and {1} are in different components")]
    UnreachablePair(usize, usize),
}

/// A shortest path between its endpoints. Consecutive vertices are adjacent,
/// all vertices are distinct, and the edge count equals the graph distance of
/// the endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Geodesic {
    vertices: Vec<usize>,
}

impl Geodesic {
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn s(&self) -> usize {
        self.vertices[0]
    }

    pub fn t(&self) -> usize {
        *self.vertices.last().unwrap()
    }

    /// Edge count. A path always has at least one vertex.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Vertices strictly between the endpoints, ascending.
    pub fn interior(&self) -> Vec<usize> {
        let mut inner: Vec<usize> = self.vertices[1..self.vertices.len() - 1].to_vec();
        inner.sort_unstable();
        inner
    }
}

/// A path whose non-consecutive vertices are pairwise non-adjacent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChordlessPath {
    vertices: Vec<usize>,
}

impl ChordlessPath {
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn s(&self) -> usize {
        self.vertices[0]
    }

    pub fn t(&self) -> usize {
        *self.vertices.last().unwrap()
    }

    /// Edge count. A path always has at least one vertex.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn interior(&self) -> Vec<usize> {
        let mut inner: Vec<usize> = self.vertices[1..self.vertices.len() - 1].to_vec();
        inner.sort_unstable();
        inner
    }
}

/// The geodesic interval between `s` and `t`: every vertex lying on at least
/// one `s`-`t` geodesic, i.e. `{ v : d(s,v) + d(v,t) = d(s,t) }`. Always
/// contains both endpoints.
pub fn interval(
    d: &DistanceMatrix,
    s: usize,
    t: usize,
) -> Result<Vec<usize>, PathError> {
    assert_ne!(s, t, "interval endpoints must differ");
    let Some(dst) = d.finite(s, t) else {
        return Err(PathError::UnreachablePair(s, t));
    };
    Ok((1..=d.vertex_count())
        .filter(|&v| {
            match (d.finite(s, v), d.finite(v, t)) {
                (Some(a), Some(b)) => a + b == dst,
                _ => false,
            }
        })
        .collect())
}

/// Calls `visit` with every `s`-`t` geodesic, in lexicographic order of the
/// vertex sequence. `s` and `t` must be distinct and reachable.
pub fn for_each_geodesic_between(
    g: &Graph,
    d: &DistanceMatrix,
    s: usize,
    t: usize,
    visit: &mut impl FnMut(&[usize]),
) -> Result<(), PathError> {
    assert_ne!(s, t, "geodesic endpoints must differ");
    if d.finite(s, t).is_none() {
        return Err(PathError::UnreachablePair(s, t));
    }
    let mut stack = vec![s];
    descend(g, d, t, &mut stack, visit);
    Ok(())
}

/// Depth-first extension: from the last vertex `v`, move only to neighbors
/// `u` with `d(s,u) = d(s,v) + 1` and `d(u,t) = d(v,t) - 1`. Every extension
/// stays on some geodesic, so no dead ends arise.
fn descend(
    g: &Graph,
    d: &DistanceMatrix,
    t: usize,
    stack: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    let v = *stack.last().unwrap();
    if v == t {
        visit(stack);
        return;
    }
    let s = stack[0];
    let dv = d.get(s, v);
    let rem = d.get(v, t);
    for &u in g.neighbors(v) {
        if d.get(s, u) == dv + 1 && d.get(u, t) + 1 == rem {
            stack.push(u);
            descend(g, d, t, stack, visit);
            stack.pop();
        }
    }
}

/// Streams all geodesics of the graph over unordered reachable pairs with
/// `s < t`, pairs in lexicographic order. Length-1 geodesics (the edges) are
/// included only when `include_edges` is set.
pub fn for_each_geodesic(
    g: &Graph,
    d: &DistanceMatrix,
    include_edges: bool,
    mut visit: impl FnMut(&[usize]),
) {
    let n = g.vertex_count();
    for s in 1..=n {
        for t in (s + 1)..=n {
            match d.finite(s, t) {
                None | Some(0) => continue,
                Some(1) if !include_edges => continue,
                Some(_) => {
                    for_each_geodesic_between(g, d, s, t, &mut visit)
                        .expect("pair checked reachable");
                }
            }
        }
    }
}

/// Materializes [`for_each_geodesic`].
pub fn all_geodesics(g: &Graph, d: &DistanceMatrix, include_edges: bool) -> Vec<Geodesic> {
    let mut out = Vec::new();
    for_each_geodesic(g, d, include_edges, |p| {
        out.push(Geodesic {
            vertices: p.to_vec(),
        })
    });
    out
}

/// Streams all chordless paths with at least 2 edges, once per unordered
/// endpoint pair, oriented from the smaller endpoint. The endpoints of such a
/// path are non-adjacent by definition.
pub fn for_each_chordless_path(g: &Graph, mut visit: impl FnMut(&[usize])) {
    let n = g.vertex_count();
    let mut on_path = vec![false; n + 1];
    for s in 1..=n {
        let mut stack = vec![s];
        on_path[s] = true;
        extend_chordless(g, &mut stack, &mut on_path, &mut visit);
        on_path[s] = false;
    }
}

/// Grows the path by neighbors of the tail that are non-adjacent to every
/// earlier vertex; prefixes of chordless paths are chordless, so this visits
/// each one exactly once.
fn extend_chordless(
    g: &Graph,
    stack: &mut Vec<usize>,
    on_path: &mut [bool],
    visit: &mut impl FnMut(&[usize]),
) {
    let tail = *stack.last().unwrap();
    let s = stack[0];
    'next: for &u in g.neighbors(tail) {
        if on_path[u] {
            continue;
        }
        for &w in &stack[..stack.len() - 1] {
            if g.has_edge(u, w) {
                continue 'next;
            }
        }
        stack.push(u);
        on_path[u] = true;
        if stack.len() >= 3 && u > s {
            visit(stack);
        }
        extend_chordless(g, stack, on_path, visit);
        on_path[u] = false;
        stack.pop();
    }
}

/// Materializes [`for_each_chordless_path`].
pub fn all_chordless_paths(g: &Graph) -> Vec<ChordlessPath> {
    let mut out = Vec::new();
    for_each_chordless_path(g, |p| {
        out.push(ChordlessPath {
            vertices: p.to_vec(),
        })
    });
    out.sort_by(|a, b| {
        (a.s(), a.t(), &a.vertices).cmp(&(b.s(), b.t(), &b.vertices))
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::generate::random_graph;
    use rand::prelude::*;

    #[test]
    fn intervals_on_g5() {
        let g = fixtures::g5();
        let d = g.distances();
        assert_eq!(interval(&d, 1, 3).unwrap(), vec![1, 3, 6]);
        assert_eq!(interval(&d, 2, 6).unwrap(), vec![1, 2, 4, 5, 6]);
        assert_eq!(interval(&d, 1, 2).unwrap(), vec![1, 2]);
    }

    #[test]
    fn interval_unreachable() {
        let g = crate::graph::Graph::new(2, &[]).unwrap();
        let d = g.distances();
        assert_eq!(interval(&d, 1, 2), Err(PathError::UnreachablePair(1, 2)));
    }

    #[test]
    fn geodesics_on_g5_pair_2_3() {
        let g = fixtures::g5();
        let d = g.distances();
        let mut paths = Vec::new();
        for_each_geodesic_between(&g, &d, 2, 3, &mut |p| paths.push(p.to_vec())).unwrap();
        assert_eq!(
            paths,
            vec![vec![2, 1, 6, 3], vec![2, 4, 6, 3], vec![2, 5, 6, 3]]
        );
    }

    #[test]
    fn unique_geodesic_on_path_graph() {
        let g = fixtures::path(4);
        let d = g.distances();
        let mut paths = Vec::new();
        for_each_geodesic_between(&g, &d, 1, 4, &mut |p| paths.push(p.to_vec())).unwrap();
        assert_eq!(paths, vec![vec![1, 2, 3, 4]]);
    }

    #[test]
    fn chordless_on_c4() {
        let g = fixtures::cycle(4);
        let paths = all_chordless_paths(&g);
        let between_1_3: Vec<_> = paths
            .iter()
            .filter(|p| p.s() == 1 && p.t() == 3)
            .map(|p| p.vertices().to_vec())
            .collect();
        assert_eq!(between_1_3, vec![vec![1, 2, 3], vec![1, 4, 3]]);
    }

    /// Every simple `s`-`t` path, found by exhaustive search. Test oracle,
    /// independent of the distance-matrix-guided enumeration.
    fn brute_simple_paths(g: &Graph, s: usize, t: usize) -> Vec<Vec<usize>> {
        fn go(
            g: &Graph,
            t: usize,
            path: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            let v = *path.last().unwrap();
            if v == t {
                out.push(path.clone());
                return;
            }
            for &u in g.neighbors(v) {
                if !path.contains(&u) {
                    path.push(u);
                    go(g, t, path, out);
                    path.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(g, t, &mut vec![s], &mut out);
        out
    }

    fn is_chordless(g: &Graph, p: &[usize]) -> bool {
        for i in 0..p.len() {
            for j in (i + 2)..p.len() {
                if g.has_edge(p[i], p[j]) {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn geodesics_match_brute_force() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for _ in 0..20 {
            let n = rng.random_range(2..=9);
            let m = rng.random_range(0..=n * (n - 1) / 2);
            let g = random_graph(n, m, rng.random()).unwrap();
            let d = g.distances();
            let mut got: Vec<Vec<usize>> = Vec::new();
            for_each_geodesic(&g, &d, true, |p| got.push(p.to_vec()));

            let mut want = Vec::new();
            for s in 1..=n {
                for t in (s + 1)..=n {
                    if let Some(dist) = d.finite(s, t) {
                        let mut shortest: Vec<Vec<usize>> = brute_simple_paths(&g, s, t)
                            .into_iter()
                            .filter(|p| p.len() == dist as usize + 1)
                            .collect();
                        shortest.sort();
                        want.extend(shortest);
                    }
                }
            }
            assert_eq!(got, want);

            // no duplicates
            let mut dedup = got.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(dedup.len(), got.len());
        }
    }

    #[test]
    fn chordless_match_brute_force() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(32);
        for _ in 0..20 {
            let n = rng.random_range(2..=8);
            let m = rng.random_range(0..=n * (n - 1) / 2);
            let g = random_graph(n, m, rng.random()).unwrap();
            let mut got: Vec<Vec<usize>> = all_chordless_paths(&g)
                .iter()
                .map(|p| p.vertices().to_vec())
                .collect();
            got.sort();

            let mut want = Vec::new();
            for s in 1..=n {
                for t in (s + 1)..=n {
                    for p in brute_simple_paths(&g, s, t) {
                        if p.len() >= 3 && is_chordless(&g, &p) {
                            want.push(p);
                        }
                    }
                }
            }
            want.sort();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn geodesics_are_chordless_and_subpaths_are_geodesics() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(33);
        for _ in 0..15 {
            let n = rng.random_range(2..=9);
            let m = rng.random_range(0..=n * (n - 1) / 2);
            let g = random_graph(n, m, rng.random()).unwrap();
            let d = g.distances();
            let geos = all_geodesics(&g, &d, false);
            let chordless: std::collections::BTreeSet<Vec<usize>> = all_chordless_paths(&g)
                .iter()
                .map(|p| p.vertices().to_vec())
                .collect();
            for geo in &geos {
                // chordless inflation covers every geodesic
                assert!(chordless.contains(geo.vertices()));
                // each contiguous subsequence is a geodesic between its ends
                let p = geo.vertices();
                for i in 0..p.len() {
                    for j in (i + 1)..p.len() {
                        assert_eq!(d.get(p[i], p[j]), (j - i) as u32);
                    }
                }
            }
        }
    }

    #[test]
    fn interval_is_union_of_geodesics() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(34);
        for _ in 0..15 {
            let n = rng.random_range(2..=9);
            let m = rng.random_range(0..=n * (n - 1) / 2);
            let g = random_graph(n, m, rng.random()).unwrap();
            let d = g.distances();
            for s in 1..=n {
                for t in (s + 1)..=n {
                    if !d.is_reachable(s, t) {
                        continue;
                    }
                    let mut on_some = std::collections::BTreeSet::new();
                    for_each_geodesic_between(&g, &d, s, t, &mut |p| {
                        on_some.extend(p.iter().copied());
                    })
                    .unwrap();
                    let iv: std::collections::BTreeSet<usize> =
                        interval(&d, s, t).unwrap().into_iter().collect();
                    assert_eq!(iv, on_some);
                }
            }
        }
    }
}
