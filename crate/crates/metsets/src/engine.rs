//! The LIFO enumeration core: impose superclauses one by one on 012-rows.
//!
//! The stack starts with the all-2 row (the full powerset). Popping a row
//! imposes its pending superclause, splitting it into disjoint candidate
//! sons: the branch fixing `x_s = 0`, the branch fixing `x_s = 1, x_t = 0`,
//! and the orthogonalized rows with both endpoints present and at least one
//! positive term covered. Sons satisfying every remaining clause are final
//! and emitted; the rest go back on the stack with their next pending
//! clause.

use std::time::Instant;

use num_bigint::BigUint;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::constraints::{ClauseStatus, ConstraintSystem, Family, Superclause};
use crate::rows::{orthogonalize_terms, Row012, RowError, Sym};

/// Traversal order of the LIFO stack.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RowOrder {
    /// Depth-first with the `x_s = 0` branch processed first; reproducible.
    #[default]
    Deterministic,
    /// The stack is reshuffled after every pop; used for sampling.
    Shuffled,
}

/// Knobs for [`enumerate`] and [`sample_final_rows`].
#[derive(Debug, Clone, Default)]
pub struct EngineOptions {
    /// Discard candidate sons with more than this many 1s. Every model of
    /// Hamming weight within the bound survives.
    pub max_card: Option<usize>,
    /// Seed for shuffled traversal.
    pub seed: Option<u64>,
    /// Number of worker threads; 1 keeps the run fully deterministic.
    pub workers: usize,
    pub row_order: RowOrder,
}

impl EngineOptions {
    pub fn deterministic() -> Self {
        EngineOptions {
            workers: 1,
            ..Default::default()
        }
    }

    pub fn with_max_card(mut self, k: usize) -> Self {
        self.max_card = Some(k);
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    fn effective_workers(&self) -> usize {
        self.workers.max(1)
    }
}

/// A stack entry: a row plus the index of the next clause to impose on it.
/// Clauses below `pending` are already satisfied by the row and stay
/// satisfied under refinement.
#[derive(Debug, Clone)]
pub struct WorkItem {
    pub row: Row012,
    pub pending: usize,
}

/// Run statistics, mirroring the usual reporting columns.
#[derive(Debug, Clone)]
pub struct EngineStats {
    /// Final rows emitted (R).
    pub rows: u64,
    /// Total members of the emitted rows (N), exact.
    pub models: BigUint,
    /// Members of weight `<= max_card`, when a bound was set. This is the
    /// guaranteed model count of a bounded run.
    pub bounded_models: Option<BigUint>,
    pub max_card: Option<usize>,
    pub seconds: f64,
    pub peak_stack: usize,
}

/// The enumeration result: pairwise disjoint rows whose members satisfy every
/// clause of the generating system.
#[derive(Debug, Clone)]
pub struct EsopFamily {
    n: usize,
    family: Family,
    rows: Vec<Row012>,
    stats: EngineStats,
}

impl EsopFamily {
    pub fn var_count(&self) -> usize {
        self.n
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rows(&self) -> &[Row012] {
        &self.rows
    }

    pub fn stats(&self) -> &EngineStats {
        &self.stats
    }

    /// Exact number of members, restricted to cardinality `<= k` when given.
    pub fn count_models(&self, k: Option<usize>) -> BigUint {
        match k {
            None => self.rows.iter().map(|r| r.row_count()).sum(),
            Some(k) => self.rows.iter().map(|r| r.count_bounded(k)).sum(),
        }
    }

    /// Materializes all members as bitmasks, ascending, restricted to the
    /// cardinality bound when given. Requires `n <= 64` and refuses beyond
    /// `cap` subsets per row.
    pub fn expand_models(
        &self,
        max_card: Option<usize>,
        cap: u64,
    ) -> Result<Vec<u64>, RowError> {
        let mut out = Vec::new();
        for row in &self.rows {
            out.extend(row.expand(max_card, cap)?);
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Text form: a `# n=.. rows=.. models=..` header, then one row per line.
    /// The model count honors the bound the family was enumerated under.
    pub fn to_text(&self) -> String {
        let models = self
            .stats
            .bounded_models
            .clone()
            .unwrap_or_else(|| self.stats.models.clone());
        let mut out = format!(
            "# n={} rows={} models={}\n",
            self.n, self.stats.rows, models
        );
        for row in &self.rows {
            out.push_str(&row.to_string());
            out.push('\n');
        }
        out
    }
}

/// Splits a row into pairwise disjoint candidate sons whose union is exactly
/// the part of the row satisfying the clause.
///
/// Branch order: (a) `x_s = 0` if `s` is free; (b) `x_s = 1, x_t = 0` if `t`
/// is free; (c) the rows with both endpoints 1 covering some surviving term,
/// from [`orthogonalize_terms`]. Terms touching a 0-position are dropped;
/// positions already 1 are removed; a term shrinking to empty means the part
/// with `x_s = x_t = 1` is already satisfied and forms a single son.
pub fn impose(sc: &Superclause, row: &Row012) -> Vec<Row012> {
    let mut sons = Vec::new();
    if row.get(sc.s()) == Sym::Two {
        let mut a = row.clone();
        a.set_zero(sc.s());
        sons.push(a);
    }
    let mut both = row.clone();
    if both.get(sc.s()) == Sym::Two {
        both.set_one(sc.s());
    }
    if row.get(sc.t()) == Sym::Two {
        let mut b = both.clone();
        b.set_zero(sc.t());
        sons.push(b);
    }
    if both.get(sc.t()) == Sym::Two {
        both.set_one(sc.t());
    }

    let mut satisfied_already = false;
    let mut terms: Vec<Vec<usize>> = Vec::new();
    for (term, bits) in sc.terms().iter().zip(sc.term_bits()) {
        if bits.intersects(both.zeros_bits()) {
            continue; // violated
        }
        let shrunk: Vec<usize> = term
            .iter()
            .copied()
            .filter(|&v| both.get(v) != Sym::One)
            .collect();
        if shrunk.is_empty() {
            satisfied_already = true;
            break;
        }
        terms.push(shrunk);
    }
    if satisfied_already {
        sons.push(both);
    } else if !terms.is_empty() {
        sons.extend(orthogonalize_terms(&both, &terms));
    }
    sons
}

/// Drops every candidate son with more than `k` ones. Discarded sons contain
/// no model of weight `<= k`: ones only accumulate under further imposition.
pub fn k_prune(sons: Vec<Row012>, k: usize) -> Vec<Row012> {
    sons.into_iter().filter(|r| r.ones_count() <= k).collect()
}

/// Round-robin partition of a work stack onto `fac` satellites.
pub fn split_work(stack: Vec<WorkItem>, fac: usize) -> Vec<Vec<WorkItem>> {
    assert!(fac >= 1);
    let mut out: Vec<Vec<WorkItem>> = (0..fac).map(|_| Vec::new()).collect();
    for (i, item) in stack.into_iter().enumerate() {
        out[i % fac].push(item);
    }
    out
}

fn next_unsatisfied(sys: &ConstraintSystem, row: &Row012, from: usize) -> Option<usize> {
    sys.clauses()[from..]
        .iter()
        .position(|c| c.status(row) != ClauseStatus::Satisfied)
        .map(|i| from + i)
}

fn initial_stack(sys: &ConstraintSystem, finals: &mut Vec<Row012>) -> Vec<WorkItem> {
    let root = Row012::all_free(sys.var_count());
    match next_unsatisfied(sys, &root, 0) {
        None => {
            finals.push(root);
            Vec::new()
        }
        Some(pending) => vec![WorkItem { row: root, pending }],
    }
}

/// One traversal of a work stack, collecting final rows.
struct Driver<'a> {
    sys: &'a ConstraintSystem,
    max_card: Option<usize>,
    shuffle: Option<ChaCha8Rng>,
    finals: Vec<Row012>,
    peak: usize,
}

impl Driver<'_> {
    fn new(sys: &ConstraintSystem, max_card: Option<usize>) -> Driver<'_> {
        Driver {
            sys,
            max_card,
            shuffle: None,
            finals: Vec::new(),
            peak: 0,
        }
    }

    /// Drains the stack. Stops early once `emit_limit` final rows have been
    /// collected, or once the stack has grown to `grow_until` items (used to
    /// seed parallel satellites).
    fn drain(
        &mut self,
        stack: &mut Vec<WorkItem>,
        emit_limit: Option<usize>,
        grow_until: Option<usize>,
    ) {
        loop {
            if emit_limit.is_some_and(|lim| self.finals.len() >= lim) {
                return;
            }
            if grow_until.is_some_and(|target| stack.len() >= target) {
                return;
            }
            let Some(item) = stack.pop() else { return };
            let mut sons = impose(&self.sys.clauses()[item.pending], &item.row);
            if let Some(k) = self.max_card {
                sons = k_prune(sons, k);
            }
            let mut to_push = Vec::new();
            for son in sons {
                match next_unsatisfied(self.sys, &son, item.pending + 1) {
                    None => self.finals.push(son),
                    Some(pending) => to_push.push(WorkItem { row: son, pending }),
                }
            }
            // reverse push so the first branch is processed first
            stack.extend(to_push.into_iter().rev());
            if let Some(rng) = self.shuffle.as_mut() {
                stack.shuffle(rng);
            }
            self.peak = self.peak.max(stack.len());
        }
    }
}

/// Enumerates `Mod(sys)` as pairwise disjoint rows. With a cardinality bound,
/// every emitted row has at most `max_card` ones and the union of the
/// weight-bounded members equals the bounded model set. With `workers > 1`
/// the stack is seeded, split round-robin and drained concurrently; the
/// merged model set is identical to the single-threaded one.
pub fn enumerate(sys: &ConstraintSystem, opts: &EngineOptions) -> EsopFamily {
    let start = Instant::now();
    let mut driver = Driver::new(sys, opts.max_card);
    if opts.row_order == RowOrder::Shuffled {
        driver.shuffle = Some(ChaCha8Rng::seed_from_u64(opts.seed.unwrap_or(0)));
    }
    let mut stack = initial_stack(sys, &mut driver.finals);
    driver.peak = stack.len();
    let workers = opts.effective_workers();
    if workers == 1 {
        driver.drain(&mut stack, None, None);
    } else {
        driver.drain(&mut stack, None, Some(workers));
        let results: Vec<(Vec<Row012>, usize)> = std::thread::scope(|scope| {
            let handles: Vec<_> = split_work(stack, workers)
                .into_iter()
                .map(|mut local| {
                    scope.spawn(move || {
                        let mut satellite = Driver::new(sys, opts.max_card);
                        satellite.peak = local.len();
                        satellite.drain(&mut local, None, None);
                        (satellite.finals, satellite.peak)
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        for (rows, local_peak) in results {
            driver.peak = driver.peak.max(local_peak);
            driver.finals.extend(rows);
        }
    }

    let finals = driver.finals;
    let models: BigUint = finals.iter().map(|r| r.row_count()).sum();
    let bounded_models = opts
        .max_card
        .map(|k| finals.iter().map(|r| r.count_bounded(k)).sum());
    let stats = EngineStats {
        rows: finals.len() as u64,
        models,
        bounded_models,
        max_card: opts.max_card,
        seconds: start.elapsed().as_secs_f64(),
        peak_stack: driver.peak,
    };
    EsopFamily {
        n: sys.var_count(),
        family: sys.family(),
        rows: finals,
        stats,
    }
}

/// Draws up to `count` final rows by traversing the stack in seeded random
/// order. The final rows of a run do not depend on traversal order, so every
/// sampled row is a final row of the complete enumeration; when fewer exist
/// than requested, all of them are returned.
pub fn sample_final_rows(
    sys: &ConstraintSystem,
    count: usize,
    opts: &EngineOptions,
) -> Vec<Row012> {
    let seed = opts.seed.expect("sampling requires a seed");
    if count == 0 {
        return Vec::new();
    }
    let mut driver = Driver::new(sys, opts.max_card);
    driver.shuffle = Some(ChaCha8Rng::seed_from_u64(seed));
    let mut stack = initial_stack(sys, &mut driver.finals);
    driver.drain(&mut stack, Some(count), None);
    driver.finals.truncate(count);
    driver.finals
}
