//! 012-rows: subcubes of the subset lattice, their counting algebra and the
//! orthogonalization blackbox.
//!
//! A 012-row of length `n` is a word over `{0, 1, 2}`. Position `v` (a vertex,
//! `1..=n`) holds `1` if `v` belongs to every subset of the row, `0` if it
//! belongs to none, and `2` if it may freely be present or absent. A row thus
//! denotes `2^|twos|` subsets at once.

use num_bigint::BigUint;
use thiserror::Error;

use crate::bits::Bits;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RowError {
    #[error("row length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("expansion would produce {0} subsets, above the cap of {1}")]
    ExpansionCap(BigUint, u64),
    #[error("invalid row symbol {0:?} (expected one of 0, 1, 2)")]
    InvalidSymbol(char),
    #[error("row may not be empty")]
    EmptyRow,
}

/// One symbol of a 012-row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sym {
    Zero,
    One,
    Two,
}

/// A word over `{0,1,2}` of length `n`, denoting a set of subsets of the
/// vertices `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Row012 {
    n: usize,
    ones: Bits,
    zeros: Bits,
}

impl Row012 {
    /// The all-2 row: the full powerset of `1..=n`.
    pub fn all_free(n: usize) -> Self {
        assert!(n >= 1, "row length must be at least 1");
        Row012 {
            n,
            ones: Bits::new(n),
            zeros: Bits::new(n),
        }
    }

    /// Parses a row from a string over `{0,1,2}`, one symbol per vertex.
    pub fn parse(text: &str) -> Result<Self, RowError> {
        if text.is_empty() {
            return Err(RowError::EmptyRow);
        }
        let mut row = Row012::all_free(text.chars().count());
        for (i, c) in text.chars().enumerate() {
            match c {
                '0' => row.zeros.set(i),
                '1' => row.ones.set(i),
                '2' => {}
                other => return Err(RowError::InvalidSymbol(other)),
            }
        }
        Ok(row)
    }

    /// Word length, i.e. the ambient vertex count. Rows are never empty.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.n
    }

    /// Symbol at vertex `v` (1-indexed).
    pub fn get(&self, v: usize) -> Sym {
        assert!((1..=self.n).contains(&v), "vertex {v} out of range");
        if self.ones.get(v - 1) {
            Sym::One
        } else if self.zeros.get(v - 1) {
            Sym::Zero
        } else {
            Sym::Two
        }
    }

    /// Fixes vertex `v` to `1`. Panics if `v` is fixed to `0`.
    pub fn set_one(&mut self, v: usize) {
        assert!((1..=self.n).contains(&v), "vertex {v} out of range");
        assert!(!self.zeros.get(v - 1), "vertex {v} already fixed to 0");
        self.ones.set(v - 1);
    }

    /// Fixes vertex `v` to `0`. Panics if `v` is fixed to `1`.
    pub fn set_zero(&mut self, v: usize) {
        assert!((1..=self.n).contains(&v), "vertex {v} out of range");
        assert!(!self.ones.get(v - 1), "vertex {v} already fixed to 1");
        self.zeros.set(v - 1);
    }

    pub fn ones_count(&self) -> usize {
        self.ones.count()
    }

    pub fn zeros_count(&self) -> usize {
        self.zeros.count()
    }

    pub fn twos_count(&self) -> usize {
        self.n - self.ones.count() - self.zeros.count()
    }

    /// Vertices fixed to 1, ascending.
    pub fn ones(&self) -> Vec<usize> {
        self.ones.iter().map(|i| i + 1).collect()
    }

    /// Vertices fixed to 0, ascending.
    pub fn zeros(&self) -> Vec<usize> {
        self.zeros.iter().map(|i| i + 1).collect()
    }

    /// Free vertices, ascending.
    pub fn twos(&self) -> Vec<usize> {
        (1..=self.n)
            .filter(|&v| !self.ones.get(v - 1) && !self.zeros.get(v - 1))
            .collect()
    }

    pub(crate) fn ones_bits(&self) -> &Bits {
        &self.ones
    }

    pub(crate) fn zeros_bits(&self) -> &Bits {
        &self.zeros
    }

    /// Number of subsets the row denotes: `2^|twos|`.
    pub fn row_count(&self) -> BigUint {
        BigUint::from(1u32) << self.twos_count()
    }

    /// Number of subsets of the row with cardinality at most `k`.
    ///
    /// Zero when `|ones| > k`, otherwise the binomial sum
    /// `sum_{j=0}^{k-|ones|} C(|twos|, j)`.
    pub fn count_bounded(&self, k: usize) -> BigUint {
        let ones = self.ones_count();
        if ones > k {
            return BigUint::ZERO;
        }
        let twos = self.twos_count();
        let budget = (k - ones).min(twos);
        let mut total = BigUint::ZERO;
        for j in 0..=budget {
            total += binomial(twos, j);
        }
        total
    }

    /// Number of subsets of the row with cardinality exactly `k`.
    pub fn count_exact(&self, k: usize) -> BigUint {
        let ones = self.ones_count();
        if k < ones || k > ones + self.twos_count() {
            return BigUint::ZERO;
        }
        binomial(self.twos_count(), k - ones)
    }

    /// True iff the two rows share no subset: some position is `0` in one row
    /// and `1` in the other.
    pub fn disjoint(&self, other: &Row012) -> Result<bool, RowError> {
        if self.n != other.n {
            return Err(RowError::LengthMismatch(self.n, other.n));
        }
        Ok(self.ones.intersects(&other.zeros) || self.zeros.intersects(&other.ones))
    }

    /// Materializes every subset of the row as a bitmask (`bit v-1` for vertex
    /// `v`), optionally keeping only those of cardinality at most `max_card`.
    ///
    /// Requires `n <= 64`; refuses when the row holds more than `cap` subsets.
    pub fn expand(&self, max_card: Option<usize>, cap: u64) -> Result<Vec<u64>, RowError> {
        assert!(self.n <= 64, "expansion is limited to n <= 64");
        let count = self.row_count();
        if count > BigUint::from(cap) {
            return Err(RowError::ExpansionCap(count, cap));
        }
        let base: u64 = self.ones.iter().map(|i| 1u64 << i).sum();
        let free: Vec<usize> = self
            .twos()
            .iter()
            .map(|&v| v - 1)
            .collect();
        let mut out = Vec::new();
        for pick in 0u64..(1u64 << free.len()) {
            let mut mask = base;
            for (j, &pos) in free.iter().enumerate() {
                if pick >> j & 1 == 1 {
                    mask |= 1 << pos;
                }
            }
            if max_card.is_none_or(|k| mask.count_ones() as usize <= k) {
                out.push(mask);
            }
        }
        out.sort_unstable();
        Ok(out)
    }
}

impl std::fmt::Display for Row012 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for v in 1..=self.n {
            let c = match self.get(v) {
                Sym::Zero => '0',
                Sym::One => '1',
                Sym::Two => '2',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl std::fmt::Debug for Row012 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Display::fmt(self, f)
    }
}

/// Exact binomial coefficient `C(n, k)`.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc *= BigUint::from(n - i);
        acc /= BigUint::from(i + 1);
    }
    acc
}

/// Partitions a filter `{ x in base : x superset of some term }` into pairwise
/// disjoint rows refining `base`.
///
/// Callers must pre-shrink the terms against `base`: no term may touch a
/// 0-position of `base` (such terms are violated and must be dropped), and
/// positions already 1 in `base` must be removed. Empty terms are a contract
/// breach (an empty term means the disjunction is already satisfied).
///
/// Terms are processed smallest first; each term's row excludes all previous
/// terms by branching on their leftover positions, so disjointness holds by
/// construction.
pub fn orthogonalize_terms(base: &Row012, terms: &[Vec<usize>]) -> Vec<Row012> {
    let n = base.len();
    for term in terms {
        assert!(!term.is_empty(), "empty term passed to orthogonalize_terms");
        for &v in term {
            assert!(
                base.get(v) != Sym::Zero,
                "violated term passed to orthogonalize_terms (vertex {v} is 0 in base)"
            );
            assert!(
                base.get(v) != Sym::One,
                "term vertex {v} already 1 in base; caller must shrink terms"
            );
        }
    }

    let mut sorted: Vec<Bits> = terms
        .iter()
        .map(|t| Bits::from_positions(n, t.iter().map(|&v| v - 1)))
        .collect();
    sorted.sort_by(|a, b| {
        (a.count(), a.iter().collect::<Vec<_>>()).cmp(&(b.count(), b.iter().collect::<Vec<_>>()))
    });
    // A term that contains an earlier term adds nothing to the union.
    let mut kept: Vec<Bits> = Vec::with_capacity(sorted.len());
    for t in sorted {
        if !kept.iter().any(|k| k.is_subset(&t)) {
            kept.push(t);
        }
    }

    let mut out = Vec::new();
    for i in 0..kept.len() {
        let mut row = base.clone();
        for p in kept[i].iter() {
            row.ones_mut_set(p);
        }
        exclude_previous(row, &kept[..i], 0, &mut out);
    }
    out
}

/// Emits the refinements of `row` that avoid covering any of `previous`,
/// splitting on the free positions of each still-coverable previous term.
fn exclude_previous(row: Row012, previous: &[Bits], from: usize, out: &mut Vec<Row012>) {
    for (j, prev) in previous.iter().enumerate().skip(from) {
        if prev.intersects(row.zeros_bits()) {
            continue; // already excluded
        }
        let open = prev.difference(row.ones_bits());
        if open.is_empty() {
            return; // row would cover an earlier term: dead branch
        }
        // not-all-of-open-are-1 == disjoint split: first 0, or 1 then 0, ...
        let open: Vec<usize> = open.iter().collect();
        for l in 0..open.len() {
            let mut branch = row.clone();
            for &p in &open[..l] {
                branch.ones_mut_set(p);
            }
            branch.zeros_mut_set(open[l]);
            exclude_previous(branch, previous, j + 1, out);
        }
        return;
    }
    out.push(row);
}

impl Row012 {
    /// 0-indexed internal setter used by the orthogonalizer.
    fn ones_mut_set(&mut self, pos: usize) {
        debug_assert!(!self.zeros.get(pos));
        self.ones.set(pos);
    }

    fn zeros_mut_set(&mut self, pos: usize) {
        debug_assert!(!self.ones.get(pos));
        self.zeros.set(pos);
    }
}
