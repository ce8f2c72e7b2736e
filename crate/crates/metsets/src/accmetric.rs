//! Level-wise enumeration of accessible metric sets.
//!
//! A metric set is accessible when it can be grown from a singleton through a
//! tower of metric sets, one vertex at a time. Level k+1 is produced from
//! level k by trying every extension `X ∪ {t}`: a book-keeping set `B_t`
//! collects, over all geodesics `P` with `t ∈ P` and `P \ {t} ⊆ X`, the
//! vertices `P ∩ X`; the extension is metric exactly when `B_t` covers every
//! vertex of `X` reachable from `t`. An `Avoid` filter keeps a set from being
//! listed once per predecessor.

use std::collections::HashMap;

use crate::bits::Bits;
use crate::graph::{DistanceMatrix, Graph};
use crate::paths::{all_geodesics, Geodesic};

/// All accessible metric sets of one cardinality, lexicographically sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AccLevel {
    pub k: usize,
    pub sets: Vec<Vec<usize>>,
}

/// Decides whether `x ∪ {t}` is metric, given that `x` is, by scanning the
/// geodesic list (which must include the length-1 geodesics: without them
/// adjacent pairs could never certify coverage).
pub fn extend_check(
    x: &[usize],
    t: usize,
    geodesics: &[Geodesic],
    d: &DistanceMatrix,
) -> bool {
    let n = d.vertex_count();
    let x_bits = Bits::from_positions(n, x.iter().map(|&v| v - 1));
    debug_assert!(!x_bits.get(t - 1), "t must lie outside the set");
    let index = GeodesicIndex::build(n, geodesics);
    covers_reachable(&x_bits, t, &index, d, usize::MAX)
}

/// The vertices whose addition to `level_sets[i]` would recreate an earlier
/// set of the same level: `{ y : exists j < i with X_j \ X_i = {y} }`.
/// Indices are 0-based.
pub fn avoid_set(i: usize, level_sets: &[Vec<usize>]) -> Vec<usize> {
    let xi = &level_sets[i];
    let mut avoid = Vec::new();
    for xj in &level_sets[..i] {
        let mut diff = xj.iter().filter(|v| !xi.contains(v));
        if let (Some(&y), None) = (diff.next(), diff.next()) {
            avoid.push(y);
        }
    }
    avoid.sort_unstable();
    avoid.dedup();
    avoid
}

/// Enumerates all accessible metric sets, grouped by cardinality, up to
/// `max_card` when given. Level 1 holds every singleton; enumeration stops
/// when a level comes out empty.
pub fn acc_metric_enumerate(g: &Graph, max_card: Option<usize>) -> Vec<AccLevel> {
    let n = g.vertex_count();
    let mut levels = Vec::new();
    if max_card == Some(0) {
        return levels;
    }
    let d = g.distances();
    let geodesics = all_geodesics(g, &d, true);
    let index = GeodesicIndex::build(n, &geodesics);

    let mut current: Vec<Bits> = (0..n).map(|i| Bits::from_positions(n, [i])).collect();
    let mut k = 1usize;
    while !current.is_empty() {
        levels.push(AccLevel {
            k,
            sets: current.iter().map(to_vertex_list).collect(),
        });
        if max_card.is_some_and(|cap| k >= cap) {
            break;
        }
        let mut next: Vec<Bits> = Vec::new();
        for (i, x) in current.iter().enumerate() {
            let avoid = avoid_bits(i, &current, n);
            for t in 1..=n {
                if x.get(t - 1) || avoid.get(t - 1) {
                    continue;
                }
                if covers_reachable(x, t, &index, &d, k + 1) {
                    let mut grown = x.clone();
                    grown.set(t - 1);
                    next.push(grown);
                }
            }
        }
        next.sort_by_key(to_vertex_list);
        current = next;
        k += 1;
    }
    levels
}

fn to_vertex_list(b: &Bits) -> Vec<usize> {
    b.iter().map(|i| i + 1).collect()
}

fn avoid_bits(i: usize, level: &[Bits], n: usize) -> Bits {
    let mut avoid = Bits::new(n);
    for xj in &level[..i] {
        let diff = xj.difference(&level[i]);
        if diff.count() == 1 {
            avoid.set(diff.iter().next().unwrap());
        }
    }
    avoid
}

/// Geodesic vertex sets indexed by contained vertex, ascending by size, for
/// the book-keeping scan. Only geodesics with at most `k+1` vertices can
/// certify an extension at level k, so larger ones are skipped early.
struct GeodesicIndex {
    sets: Vec<Bits>,
    by_vertex: Vec<Vec<usize>>,
}

impl GeodesicIndex {
    fn build(n: usize, geodesics: &[Geodesic]) -> Self {
        let mut sets: Vec<Bits> = geodesics
            .iter()
            .map(|g| Bits::from_positions(n, g.vertices().iter().map(|&v| v - 1)))
            .collect();
        sets.sort_by_key(|b| b.count());
        let mut by_vertex = vec![Vec::new(); n + 1];
        for (idx, set) in sets.iter().enumerate() {
            for pos in set.iter() {
                by_vertex[pos + 1].push(idx);
            }
        }
        GeodesicIndex { sets, by_vertex }
    }
}

/// The `B_t` inflation: true iff the union of `P ∩ X` over all geodesics `P`
/// with `t ∈ P` and `P \ {t} ⊆ X` equals every vertex of `X` reachable
/// from `t`. Pairs in other components impose nothing.
fn covers_reachable(
    x: &Bits,
    t: usize,
    index: &GeodesicIndex,
    d: &DistanceMatrix,
    max_geo_vertices: usize,
) -> bool {
    let n = d.vertex_count();
    let mut required = Bits::new(n);
    for pos in x.iter() {
        if d.is_reachable(pos + 1, t) {
            required.set(pos);
        }
    }
    if required.is_empty() {
        return true;
    }
    let mut covered = Bits::new(n);
    for &gi in &index.by_vertex[t] {
        let p = &index.sets[gi];
        if p.count() > max_geo_vertices {
            break; // sorted by size
        }
        let mut without_t = p.clone();
        without_t.clear(t - 1);
        if without_t.is_subset(x) {
            covered.union_with(&without_t);
            if covered == required {
                return true;
            }
        }
    }
    covered == required
}

/// Memoizing brute-force accessibility oracle: a set is accessible metric iff
/// it is metric and, unless it is a singleton, some one-vertex-smaller subset
/// already is. The empty set counts as accessible (the degenerate tower).
pub struct AccOracle<'g> {
    graph: &'g Graph,
    d: DistanceMatrix,
    memo: HashMap<u64, bool>,
}

impl<'g> AccOracle<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        assert!(
            graph.vertex_count() <= crate::oracle::BRUTE_CAP,
            "accessibility oracle is exhaustive; keep it small"
        );
        AccOracle {
            graph,
            d: graph.distances(),
            memo: HashMap::new(),
        }
    }

    /// Subset given as a bitmask (bit `v-1` for vertex `v`).
    pub fn is_acc_metric(&mut self, mask: u64) -> bool {
        if let Some(&cached) = self.memo.get(&mask) {
            return cached;
        }
        let result = if mask == 0 {
            true
        } else if !crate::oracle::is_metric(self.graph, &self.d, mask) {
            false
        } else if mask.count_ones() == 1 {
            true
        } else {
            (0..self.graph.vertex_count())
                .any(|i| mask >> i & 1 == 1 && self.is_acc_metric(mask & !(1 << i)))
        };
        self.memo.insert(mask, result);
        result
    }
}

/// One-shot form of the accessibility oracle.
pub fn is_acc_metric_oracle(g: &Graph, x: &[usize]) -> bool {
    let mask = x.iter().fold(0u64, |acc, &v| acc | 1 << (v - 1));
    AccOracle::new(g).is_acc_metric(mask)
}
