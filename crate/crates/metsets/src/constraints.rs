//! Superclause systems characterizing metric, geodesically convex and
//! connected vertex subsets.
//!
//! For each non-adjacent reachable pair `(s,t)` a superclause demands: either
//! `s` or `t` is absent, or the subset contains all of at least one positive
//! term. For the metric family the terms are the interiors of the `s`-`t`
//! geodesics; for geodesic convexity the single term is the whole interval
//! interior; for connectivity the terms are the interiors of the chordless
//! `s`-`t` paths.

use std::collections::BTreeSet;

use crate::bits::Bits;
use crate::graph::{DistanceMatrix, Graph};
use crate::paths::{ChordlessPath, Geodesic};
use crate::rows::{Row012, Sym};

/// Which set family a constraint system describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Metric,
    Geconv,
    Connected,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Metric => "metric",
            Family::Geconv => "geconv",
            Family::Connected => "connected",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "metric" => Ok(Family::Metric),
            "geconv" => Ok(Family::Geconv),
            "connected" => Ok(Family::Connected),
            other => Err(format!(
                "unknown family {other:?} (expected metric, geconv or connected)"
            )),
        }
    }
}

/// `!x_s | !x_t | T_1 | T_2 | ...` where each positive term `T_i` is a
/// conjunction of vertices, disjoint from `{s, t}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Superclause {
    s: usize,
    t: usize,
    terms: Vec<Vec<usize>>,
    term_bits: Vec<Bits>,
}

impl Superclause {
    /// `terms` must be non-empty sets of vertices avoiding `s` and `t`;
    /// duplicates are removed and terms are ordered by (size, lex).
    pub fn new(n: usize, s: usize, t: usize, terms: Vec<Vec<usize>>) -> Self {
        assert!(s != t, "superclause endpoints must differ");
        let mut canon: BTreeSet<Vec<usize>> = BTreeSet::new();
        for mut term in terms {
            term.sort_unstable();
            term.dedup();
            assert!(!term.is_empty(), "superclause term may not be empty");
            assert!(
                !term.contains(&s) && !term.contains(&t),
                "terms may not contain the clause endpoints"
            );
            assert!(term.iter().all(|&v| (1..=n).contains(&v)));
            canon.insert(term);
        }
        let mut terms: Vec<Vec<usize>> = canon.into_iter().collect();
        terms.sort_by_key(|t| (t.len(), t.clone()));
        let term_bits = terms
            .iter()
            .map(|t| Bits::from_positions(n, t.iter().map(|&v| v - 1)))
            .collect();
        Superclause {
            s,
            t,
            terms,
            term_bits,
        }
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn terms(&self) -> &[Vec<usize>] {
        &self.terms
    }

    pub(crate) fn term_bits(&self) -> &[Bits] {
        &self.term_bits
    }

    /// Evaluates the clause on a concrete subset given as a bitmask
    /// (bit `v-1` set iff vertex `v` in the subset). Requires `n <= 64`.
    pub fn eval_mask(&self, mask: u64) -> bool {
        if mask >> (self.s - 1) & 1 == 0 || mask >> (self.t - 1) & 1 == 0 {
            return true;
        }
        self.terms
            .iter()
            .any(|t| t.iter().all(|&v| mask >> (v - 1) & 1 == 1))
    }

    /// Clause state relative to a row, driving the imposition step.
    pub fn status(&self, row: &Row012) -> ClauseStatus {
        if row.get(self.s) == Sym::Zero || row.get(self.t) == Sym::Zero {
            return ClauseStatus::Satisfied;
        }
        if self
            .term_bits
            .iter()
            .any(|t| t.is_subset(row.ones_bits()))
        {
            return ClauseStatus::Satisfied;
        }
        if row.get(self.s) == Sym::One && row.get(self.t) == Sym::One {
            ClauseStatus::TermsPending
        } else {
            ClauseStatus::NeedsBranch
        }
    }
}

impl std::fmt::Display for Superclause {
    /// The dump format: `!s !t | {a,b} {c} ...`
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "!{} !{} |", self.s, self.t)?;
        for term in &self.terms {
            let inner: Vec<String> = term.iter().map(|v| v.to_string()).collect();
            write!(f, " {{{}}}", inner.join(","))?;
        }
        Ok(())
    }
}

/// How a row stands relative to one superclause.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClauseStatus {
    /// The row already satisfies the clause: `s` or `t` is 0, or a term is
    /// fully 1.
    Satisfied,
    /// `s` or `t` is still free; the negative branches apply.
    NeedsBranch,
    /// Both endpoints are fixed to 1; only the positive terms remain.
    TermsPending,
}

/// An ordered conjunction of superclauses over `n` variables.
#[derive(Debug, Clone)]
pub struct ConstraintSystem {
    n: usize,
    family: Family,
    clauses: Vec<Superclause>,
}

impl ConstraintSystem {
    pub fn new(n: usize, family: Family, clauses: Vec<Superclause>) -> Self {
        ConstraintSystem { n, family, clauses }
    }

    pub fn var_count(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn clauses(&self) -> &[Superclause] {
        &self.clauses
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    /// Evaluates the whole conjunction on a subset bitmask (`n <= 64`).
    pub fn eval_mask(&self, mask: u64) -> bool {
        self.clauses.iter().all(|c| c.eval_mask(mask))
    }
}

/// The non-adjacent reachable pairs of the graph, lexicographically. Each one
/// contributes exactly one superclause in every family.
fn clause_pairs(g: &Graph, d: &DistanceMatrix) -> Vec<(usize, usize)> {
    let n = g.vertex_count();
    let mut pairs = Vec::new();
    for s in 1..=n {
        for t in (s + 1)..=n {
            if !g.has_edge(s, t) && d.is_reachable(s, t) {
                pairs.push((s, t));
            }
        }
    }
    pairs
}

/// One superclause per non-adjacent reachable pair, with the interiors of all
/// `s`-`t` geodesics as terms. A subset is metric iff it satisfies every
/// clause. `geodesics` must exclude the length-1 geodesics.
pub fn superclauses_metric(
    g: &Graph,
    d: &DistanceMatrix,
    geodesics: &[Geodesic],
) -> ConstraintSystem {
    let n = g.vertex_count();
    let mut per_pair: std::collections::BTreeMap<(usize, usize), Vec<Vec<usize>>> =
        clause_pairs(g, d).into_iter().map(|p| (p, Vec::new())).collect();
    for geo in geodesics {
        debug_assert!(geo.len() >= 2, "edge geodesics must be excluded");
        let key = (geo.s().min(geo.t()), geo.s().max(geo.t()));
        per_pair
            .get_mut(&key)
            .expect("geodesic endpoints form a non-adjacent reachable pair")
            .push(geo.interior());
    }
    let clauses = per_pair
        .into_iter()
        .map(|((s, t), terms)| Superclause::new(n, s, t, terms))
        .collect();
    ConstraintSystem::new(n, Family::Metric, clauses)
}

/// One superclause per non-adjacent reachable pair, whose single term is the
/// interval interior: all interior vertices are jointly required. Satisfying
/// subsets are exactly the geodesically convex ones.
pub fn superclauses_geconv(g: &Graph, d: &DistanceMatrix) -> ConstraintSystem {
    let n = g.vertex_count();
    let clauses = clause_pairs(g, d)
        .into_iter()
        .map(|(s, t)| {
            let inner: Vec<usize> = crate::paths::interval(d, s, t)
                .expect("pair is reachable")
                .into_iter()
                .filter(|&v| v != s && v != t)
                .collect();
            Superclause::new(n, s, t, vec![inner])
        })
        .collect();
    ConstraintSystem::new(n, Family::Geconv, clauses)
}

/// One superclause per non-adjacent reachable pair, with the interiors of all
/// chordless `s`-`t` paths as terms. Satisfying subsets are exactly those
/// connected inside each component of the graph.
pub fn superclauses_connected(
    g: &Graph,
    d: &DistanceMatrix,
    chordless: &[ChordlessPath],
) -> ConstraintSystem {
    let n = g.vertex_count();
    let mut per_pair: std::collections::BTreeMap<(usize, usize), Vec<Vec<usize>>> =
        clause_pairs(g, d).into_iter().map(|p| (p, Vec::new())).collect();
    for path in chordless {
        debug_assert!(path.len() >= 2);
        let key = (path.s().min(path.t()), path.s().max(path.t()));
        per_pair
            .get_mut(&key)
            .expect("chordless endpoints are non-adjacent and reachable")
            .push(path.interior());
    }
    let clauses = per_pair
        .into_iter()
        .map(|((s, t), terms)| Superclause::new(n, s, t, terms))
        .collect();
    ConstraintSystem::new(n, Family::Connected, clauses)
}

/// Builds the constraint system of the requested family from scratch.
pub fn build_system(g: &Graph, family: Family) -> ConstraintSystem {
    let d = g.distances();
    match family {
        Family::Metric => {
            let geos = crate::paths::all_geodesics(g, &d, false);
            superclauses_metric(g, &d, &geos)
        }
        Family::Geconv => superclauses_geconv(g, &d),
        Family::Connected => {
            let paths = crate::paths::all_chordless_paths(g);
            superclauses_connected(g, &d, &paths)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::generate::random_graph;
    use rand::prelude::*;

    fn g5_metric() -> ConstraintSystem {
        build_system(&fixtures::g5(), Family::Metric)
    }

    #[test]
    fn g5_metric_clauses_match_reference() {
        let sys = g5_metric();
        let got: Vec<(usize, usize, Vec<Vec<usize>>)> = sys
            .clauses()
            .iter()
            .map(|c| (c.s(), c.t(), c.terms().to_vec()))
            .collect();
        let want = vec![
            (1, 3, vec![vec![6]]),
            (2, 3, vec![vec![1, 6], vec![4, 6], vec![5, 6]]),
            (2, 6, vec![vec![1], vec![4], vec![5]]),
            (3, 4, vec![vec![6]]),
            (3, 5, vec![vec![6]]),
        ];
        assert_eq!(got, want);
    }

    #[test]
    fn complete_graph_has_empty_system() {
        for family in [Family::Metric, Family::Geconv, Family::Connected] {
            let sys = build_system(&fixtures::complete(5), family);
            assert!(sys.is_empty());
        }
    }

    #[test]
    fn path3_single_clause() {
        let sys = build_system(&fixtures::path(3), Family::Metric);
        assert_eq!(sys.clauses().len(), 1);
        let c = &sys.clauses()[0];
        assert_eq!((c.s(), c.t()), (1, 3));
        assert_eq!(c.terms(), &[vec![2]]);
    }

    #[test]
    fn g5_geconv_pair_2_6() {
        let sys = build_system(&fixtures::g5(), Family::Geconv);
        let c = sys
            .clauses()
            .iter()
            .find(|c| (c.s(), c.t()) == (2, 6))
            .unwrap();
        assert_eq!(c.terms(), &[vec![1, 4, 5]]);
    }

    #[test]
    fn geconv_single_term_everywhere() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(40);
        for _ in 0..10 {
            let n = rng.random_range(2..=10);
            let m = rng.random_range(0..=n * (n - 1) / 2);
            let g = random_graph(n, m, rng.random()).unwrap();
            for c in build_system(&g, Family::Geconv).clauses() {
                assert_eq!(c.terms().len(), 1);
            }
        }
    }

    #[test]
    fn tree_systems_coincide() {
        // unique geodesics: the geodesic interior IS the interval interior
        for seed in [1u64, 2, 3] {
            let t = crate::generate::random_tree(9, 4, seed).unwrap();
            let metric = build_system(&t, Family::Metric);
            let geconv = build_system(&t, Family::Geconv);
            assert_eq!(metric.clauses(), geconv.clauses());
        }
    }

    #[test]
    fn c4_connected_terms() {
        let sys = build_system(&fixtures::cycle(4), Family::Connected);
        let c = sys
            .clauses()
            .iter()
            .find(|c| (c.s(), c.t()) == (1, 3))
            .unwrap();
        assert_eq!(c.terms(), &[vec![2], vec![4]]);
    }

    #[test]
    fn clause_status_cases() {
        let sys = g5_metric();
        let clause2 = &sys.clauses()[1]; // (2,3)
        let clause1 = &sys.clauses()[0]; // (1,3)
        let clause3 = &sys.clauses()[2]; // (2,6)

        let r1 = Row012::parse("022222").unwrap();
        assert_eq!(clause2.status(&r1), ClauseStatus::NeedsBranch);

        let r2 = Row012::parse("120222").unwrap();
        assert_eq!(clause1.status(&r2), ClauseStatus::Satisfied);

        let r11 = Row012::parse("002222").unwrap();
        assert_eq!(clause3.status(&r11), ClauseStatus::Satisfied);

        let both_fixed = Row012::parse("011222").unwrap();
        assert_eq!(clause2.status(&both_fixed), ClauseStatus::TermsPending);
    }

    #[test]
    fn systems_match_oracles_on_random_graphs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for _ in 0..30 {
            let n = rng.random_range(1..=10);
            let m = rng.random_range(0..=n * (n - 1) / 2);
            let g = random_graph(n, m, rng.random()).unwrap();
            let d = g.distances();
            let metric = build_system(&g, Family::Metric);
            let geconv = build_system(&g, Family::Geconv);
            let connected = build_system(&g, Family::Connected);

            // one clause per non-adjacent reachable pair, in every family
            let pairs = (1..=n)
                .flat_map(|s| ((s + 1)..=n).map(move |t| (s, t)))
                .filter(|&(s, t)| !g.has_edge(s, t) && d.is_reachable(s, t))
                .count();
            for sys in [&metric, &geconv, &connected] {
                assert_eq!(sys.clauses().len(), pairs);
            }
            for mask in 0u64..(1 << n) {
                assert_eq!(
                    metric.eval_mask(mask),
                    crate::oracle::is_metric(&g, &d, mask),
                    "metric mask {mask:b} on {g:?}"
                );
                assert_eq!(
                    geconv.eval_mask(mask),
                    crate::oracle::is_geconv(&g, &d, mask),
                    "geconv mask {mask:b}"
                );
                assert_eq!(
                    connected.eval_mask(mask),
                    crate::oracle::is_connected(&g, &d, mask),
                    "connected mask {mask:b}"
                );
                // implication chain
                if geconv.eval_mask(mask) {
                    assert!(metric.eval_mask(mask));
                }
                if metric.eval_mask(mask) {
                    assert!(connected.eval_mask(mask));
                }
            }
        }
    }
}
