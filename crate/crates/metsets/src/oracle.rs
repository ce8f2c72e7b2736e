//! Brute-force reference implementations of the family definitions.
//!
//! Everything here works on explicit subsets (bitmasks, bit `v-1` for vertex
//! `v`) and per-subset BFS, deliberately independent of the row engine it is
//! used to check. Subsets spanning several components are handled the way the
//! constraint systems see them: conditions on pairs in different components
//! are vacuous, so the empty set and all singletons belong to every family.

use thiserror::Error;

use crate::constraints::Family;
use crate::graph::{DistanceMatrix, Graph};

/// Hard cap for exhaustive 2^n scans.
pub const BRUTE_CAP: usize = 22;

/// Cap for the distance-hereditary check.
pub const DH_CAP: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {n} vertices, above the exhaustive-scan cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("vertex {0} is not in the subset")]
    NotInSubset(usize),
    #[error("vertex {vertex} out of range 1..={n}")]
    OutOfRange { vertex: usize, n: usize },
}

/// Shortest-path length between `s` and `t` using only vertices of the
/// subset `mask`; `None` when they are disconnected within it.
pub fn dist_in_subset(
    g: &Graph,
    mask: u64,
    s: usize,
    t: usize,
) -> Result<Option<u32>, OracleError> {
    let n = g.vertex_count();
    for v in [s, t] {
        if v < 1 || v > n {
            return Err(OracleError::OutOfRange { vertex: v, n });
        }
        if mask >> (v - 1) & 1 == 0 {
            return Err(OracleError::NotInSubset(v));
        }
    }
    let mut dist = vec![u32::MAX; n + 1];
    dist[s] = 0;
    let mut queue = std::collections::VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        if v == t {
            return Ok(Some(dist[v]));
        }
        for &u in g.neighbors(v) {
            if mask >> (u - 1) & 1 == 1 && dist[u] == u32::MAX {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    Ok(None)
}

fn mask_vertices(mask: u64, n: usize) -> impl Iterator<Item = usize> {
    (1..=n).filter(move |&v| mask >> (v - 1) & 1 == 1)
}

/// A subset is metric when distances within it equal global distances for
/// every pair of its vertices (pairs in different components are vacuous).
pub fn is_metric(g: &Graph, d: &DistanceMatrix, mask: u64) -> bool {
    let n = g.vertex_count();
    let members: Vec<usize> = mask_vertices(mask, n).collect();
    for (i, &s) in members.iter().enumerate() {
        for &t in &members[i + 1..] {
            let inner = dist_in_subset(g, mask, s, t).unwrap();
            match (d.finite(s, t), inner) {
                (None, _) => {} // vacuous: no path globally either
                (Some(global), Some(local)) if local == global => {}
                _ => return false,
            }
        }
    }
    true
}

/// A subset is geodesically convex when it contains the full interval of
/// every pair of its vertices at finite distance.
pub fn is_geconv(g: &Graph, d: &DistanceMatrix, mask: u64) -> bool {
    let n = g.vertex_count();
    let members: Vec<usize> = mask_vertices(mask, n).collect();
    for (i, &s) in members.iter().enumerate() {
        for &t in &members[i + 1..] {
            let Some(dst) = d.finite(s, t) else { continue };
            for v in 1..=n {
                if mask >> (v - 1) & 1 == 1 {
                    continue;
                }
                if let (Some(a), Some(b)) = (d.finite(s, v), d.finite(v, t)) {
                    if a + b == dst {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// A subset is connected when every pair of its vertices lying in the same
/// component of the graph is joined by a path inside the subset.
pub fn is_connected(g: &Graph, d: &DistanceMatrix, mask: u64) -> bool {
    let n = g.vertex_count();
    let members: Vec<usize> = mask_vertices(mask, n).collect();
    for (i, &s) in members.iter().enumerate() {
        for &t in &members[i + 1..] {
            if d.is_reachable(s, t) && dist_in_subset(g, mask, s, t).unwrap().is_none() {
                return false;
            }
        }
    }
    true
}

/// All subsets of one family, found by scanning all 2^n bitmasks.
#[derive(Debug, Clone)]
pub struct FamilyReport {
    pub family: Family,
    /// Member subsets as bitmasks, ascending.
    pub members: Vec<u64>,
}

impl FamilyReport {
    pub fn count(&self) -> u64 {
        self.members.len() as u64
    }

    /// Members per cardinality; index `k` counts the k-element subsets.
    pub fn histogram(&self, n: usize) -> Vec<u64> {
        let mut h = vec![0u64; n + 1];
        for &m in &self.members {
            h[m.count_ones() as usize] += 1;
        }
        h
    }
}

/// Exhaustively collects the family members, optionally only those with at
/// most `max_card` vertices. Fails above [`BRUTE_CAP`] vertices.
pub fn brute_family(
    g: &Graph,
    family: Family,
    max_card: Option<usize>,
) -> Result<FamilyReport, OracleError> {
    let n = g.vertex_count();
    if n > BRUTE_CAP {
        return Err(OracleError::CapExceeded { n, cap: BRUTE_CAP });
    }
    let d = g.distances();
    let predicate: fn(&Graph, &DistanceMatrix, u64) -> bool = match family {
        Family::Metric => is_metric,
        Family::Geconv => is_geconv,
        Family::Connected => is_connected,
    };
    let mut members = Vec::new();
    for mask in 0u64..(1u64 << n) {
        if let Some(k) = max_card {
            if mask.count_ones() as usize > k {
                continue;
            }
        }
        if predicate(g, &d, mask) {
            members.push(mask);
        }
    }
    Ok(FamilyReport { family, members })
}

/// True when every connected subset is metric, checked by brute force.
/// Fails above [`DH_CAP`] vertices.
pub fn is_distance_hereditary_small(g: &Graph) -> Result<bool, OracleError> {
    let n = g.vertex_count();
    if n > DH_CAP {
        return Err(OracleError::CapExceeded { n, cap: DH_CAP });
    }
    let d = g.distances();
    for mask in 0u64..(1u64 << n) {
        if is_connected(g, &d, mask) && !is_metric(g, &d, mask) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn full_mask(n: usize) -> u64 {
        (1u64 << n) - 1
    }

    #[test]
    fn dist_in_subset_on_c5() {
        let g = fixtures::cycle(5);
        // X = {1,2,3,4}: going around through 5 is forbidden
        let x = 0b01111;
        assert_eq!(dist_in_subset(&g, x, 1, 4).unwrap(), Some(3));
        assert_eq!(g.distances().get(1, 4), 2);
    }

    #[test]
    fn dist_in_subset_degenerate() {
        let g = fixtures::g5();
        let d = g.distances();
        let all = full_mask(6);
        for s in 1..=6 {
            assert_eq!(dist_in_subset(&g, all, s, s).unwrap(), Some(0));
            for t in (s + 1)..=6 {
                assert_eq!(
                    dist_in_subset(&g, all, s, t).unwrap(),
                    d.finite(s, t)
                );
            }
        }
        assert_eq!(
            dist_in_subset(&g, 0b1, 1, 2),
            Err(OracleError::NotInSubset(2))
        );
        assert_eq!(
            dist_in_subset(&g, full_mask(6), 7, 1),
            Err(OracleError::OutOfRange { vertex: 7, n: 6 })
        );
    }

    #[test]
    fn g5_has_47_metric_subsets() {
        let report = brute_family(&fixtures::g5(), Family::Metric, None).unwrap();
        assert_eq!(report.count(), 47);
    }

    #[test]
    fn complete_graph_families_are_everything() {
        let g = fixtures::complete(4);
        let d = g.distances();
        for mask in 0u64..16 {
            assert!(is_metric(&g, &d, mask));
            assert!(is_geconv(&g, &d, mask));
            assert!(is_connected(&g, &d, mask));
        }
    }

    #[test]
    fn c5_consecutive_four_not_metric() {
        let g = fixtures::cycle(5);
        let d = g.distances();
        assert!(!is_metric(&g, &d, 0b01111));
        assert!(is_connected(&g, &d, 0b01111));
    }

    #[test]
    fn tree_families_coincide() {
        for seed in [4u64, 5, 6] {
            let t = crate::generate::random_tree(10, 4, seed).unwrap();
            let metric = brute_family(&t, Family::Metric, None).unwrap();
            let geconv = brute_family(&t, Family::Geconv, None).unwrap();
            let connected = brute_family(&t, Family::Connected, None).unwrap();
            assert_eq!(metric.members, geconv.members);
            assert_eq!(metric.members, connected.members);
        }
    }

    #[test]
    fn family_chain_on_random_graphs() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(50);
        for _ in 0..10 {
            let n = rng.random_range(1..=10);
            let m = rng.random_range(0..=n * (n - 1) / 2);
            let g = crate::generate::random_graph(n, m, rng.random()).unwrap();
            let geconv = brute_family(&g, Family::Geconv, None).unwrap();
            let metric = brute_family(&g, Family::Metric, None).unwrap();
            let connected = brute_family(&g, Family::Connected, None).unwrap();
            let metric_set: std::collections::BTreeSet<u64> =
                metric.members.iter().copied().collect();
            let connected_set: std::collections::BTreeSet<u64> =
                connected.members.iter().copied().collect();
            for x in &geconv.members {
                assert!(metric_set.contains(x));
            }
            for x in &metric.members {
                assert!(connected_set.contains(x));
            }
        }
    }

    #[test]
    fn distance_hereditary_checks()  {
        let t = crate::generate::random_tree(8, 3, 9).unwrap();
        assert_eq!(is_distance_hereditary_small(&t), Ok(true));
        assert_eq!(is_distance_hereditary_small(&fixtures::cycle(5)), Ok(false));
        assert_eq!(is_distance_hereditary_small(&fixtures::complete(5)), Ok(true));
        // C4 is distance-hereditary (no circuit of length >= 5)
        assert_eq!(is_distance_hereditary_small(&fixtures::cycle(4)), Ok(true));
    }

    #[test]
    fn histogram_and_bounded_scan() {
        let g = fixtures::g5();
        let all = brute_family(&g, Family::Metric, None).unwrap();
        let hist = all.histogram(6);
        assert_eq!(hist.iter().sum::<u64>(), 47);
        assert_eq!(hist[0], 1);
        assert_eq!(hist[1], 6);

        let bounded = brute_family(&g, Family::Metric, Some(2)).unwrap();
        assert_eq!(bounded.count(), hist[0] + hist[1] + hist[2]);
    }
}
