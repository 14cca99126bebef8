//! Exhaustive search for linear MDS codes in systematic form `[I_k | P]`.
//!
//! A code with generator `[I_k | P]` is MDS iff every square submatrix of
//! `P` is nonsingular. The search fills `P` one column at a time in canonical
//! order and extends a column only while every minor ending in it is
//! nonzero. With pruning enabled, candidate columns already have all entries
//! nonzero, so `(q-1)^(k(n-k))` bounds the number of complete blocks.
//!
//! Two independent acceptance routes are available:
//!
//! - [`Route::Minors`]: square submatrices of `P`.
//! - [`Route::ColumnSets`]: every `k` columns of the full generator are
//!   linearly independent.
//!
//! The default fixed information set `{0, .., k-1}` is exhaustive for MDS
//! existence because every `k` coordinates of an MDS code form an
//! information set. `all_information_sets` repeats the search once per
//! `k`-subset with the column-set route.
//!
//! `normalize` fixes the first row and first column of `P` to ones. Row and
//! column scalings map MDS codes to MDS codes, so existence is unaffected;
//! witness counts are then counts of normalized blocks.
//!
//! Work is partitioned by the choice of the first free column. Results are
//! merged in candidate order, so reports do not depend on the worker count.

use std::time::{Duration, Instant};

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::checked_pow;
use crate::error::{Error, Result};
use crate::field::{is_prime_power, FiniteField};
use crate::linear::{LinearCode, Matrix};

pub const DEFAULT_BUDGET: u64 = 5_000_000_000;
pub const DEFAULT_WITNESS_CAP: usize = 16;
pub const MAX_SEARCH_ORDER: u32 = 256;
pub const MAX_SEARCH_K: usize = 8;
const MAX_CANDIDATES: u128 = 1 << 24;
/// Witnesses are re-checked against the enumerated code below this size.
pub const ENUMERATION_CHECK_LIMIT: u128 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Minors,
    ColumnSets,
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Maximum number of column extensions attempted.
    pub budget: u64,
    /// Worker threads; 0 means available parallelism.
    pub workers: usize,
    pub pruning: bool,
    pub normalize: bool,
    pub all_information_sets: bool,
    pub stop_at_first: bool,
    pub witness_cap: usize,
    pub keep_all_witnesses: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_BUDGET,
            workers: 1,
            pruning: true,
            normalize: false,
            all_information_sets: false,
            stop_at_first: false,
            witness_cap: DEFAULT_WITNESS_CAP,
            keep_all_witnesses: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Complete,
    StoppedAtFirst,
    BudgetExceeded,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchReport {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub route: Route,
    pub pruning: bool,
    pub normalize: bool,
    pub all_information_sets: bool,
    pub stop_at_first: bool,
    pub budget: u64,
    pub status: SearchStatus,
    pub information_sets_searched: u64,
    /// Column extensions attempted (the budget unit).
    pub candidates_examined: u64,
    /// Complete MDS parity blocks, counted once per information set.
    pub mds_found: u64,
    /// Rejected extensions, indexed by parity-block column.
    pub rejections_by_depth: Vec<u64>,
    /// First witnesses in enumeration order, `k` rows of `n-k` entries.
    pub witnesses: Vec<Matrix>,
    #[serde(skip)]
    pub all_witnesses: Option<Vec<Matrix>>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl SearchReport {
    pub fn is_complete(&self) -> bool {
        self.status == SearchStatus::Complete
    }

    /// Machine-independent JSON (wall time and the optional full witness
    /// stream are excluded).
    pub fn canonical_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Clone, Default)]
struct Tally {
    extensions: u64,
    rejections: Vec<u64>,
    found: u64,
    witnesses: Vec<Matrix>,
    truncated: bool,
    stopped: bool,
}

impl Tally {
    fn new(depth: usize) -> Self {
        Tally {
            rejections: vec![0; depth],
            ..Default::default()
        }
    }

    fn absorb(&mut self, other: Tally, cap: Option<usize>) {
        self.extensions += other.extensions;
        for (a, b) in self.rejections.iter_mut().zip(other.rejections) {
            *a += b;
        }
        self.found += other.found;
        for w in other.witnesses {
            if cap.is_none_or(|c| self.witnesses.len() < c) {
                self.witnesses.push(w);
            }
        }
        self.truncated |= other.truncated;
        self.stopped |= other.stopped;
    }
}

/// One square minor (minors route) or one `k`-column set (column route) to
/// check when a given parity column is placed.
#[derive(Debug, Clone)]
struct Check {
    rows: Vec<usize>,
    /// Minors route: parity columns. Column route: generator columns, where
    /// `i < k` is the unit vector `e_i` and `k + j` is parity column `j`.
    cols: Vec<usize>,
}

struct Engine {
    q: usize,
    k: usize,
    r: usize,
    route: Route,
    pruning: bool,
    stop_at_first: bool,
    witness_cap: Option<usize>,
    sub: Vec<u8>,
    mul: Vec<u8>,
    inv: Vec<u8>,
    /// Candidate columns, `k` entries each.
    candidates: Vec<u8>,
    fixed_first: Option<Vec<u8>>,
    /// Checks triggered by placing parity column `j`.
    checks: Vec<Vec<Check>>,
}

impl Engine {
    fn new(field: &FiniteField, k: usize, r: usize, route: Route, opts: &SearchOptions) -> Result<Self> {
        let q = field.order() as usize;
        let table = |op: &dyn Fn(u32, u32) -> u32| -> Vec<u8> {
            (0..q * q)
                .map(|i| op((i / q) as u32, (i % q) as u32) as u8)
                .collect()
        };
        let sub = table(&|a, b| field.sub(a, b));
        let mul = table(&|a, b| field.mul(a, b));
        let inv = (0..q as u32).map(|a| field.inv(a).unwrap_or(0) as u8).collect();

        let free_rows = if opts.normalize { k - 1 } else { k };
        let alphabet: Vec<u8> = if opts.pruning {
            (1..q).map(|v| v as u8).collect()
        } else {
            (0..q).map(|v| v as u8).collect()
        };
        let count = checked_pow(alphabet.len() as u64, free_rows)
            .filter(|&c| c <= MAX_CANDIDATES)
            .ok_or_else(|| Error::InvalidParams("too many candidate columns".into()))?
            as usize;
        let mut candidates = Vec::with_capacity(count * k);
        for v in 0..count {
            let mut col = vec![0u8; k];
            let mut rest = v;
            for slot in col[k - free_rows..].iter_mut().rev() {
                *slot = alphabet[rest % alphabet.len()];
                rest /= alphabet.len();
            }
            if opts.normalize {
                col[0] = 1;
            }
            candidates.extend_from_slice(&col);
        }

        let checks = (0..r)
            .map(|j| match route {
                Route::Minors => {
                    // With pruning the 1x1 minors are enforced by the candidates.
                    let smallest = if opts.pruning { 2 } else { 1 };
                    (smallest..=k.min(j + 1))
                        .flat_map(|s| {
                            (0..j).combinations(s - 1).flat_map(move |mut cols| {
                                cols.push(j);
                                (0..k).combinations(s).map(move |rows| Check {
                                    rows,
                                    cols: cols.clone(),
                                })
                            })
                        })
                        .collect()
                }
                Route::ColumnSets => (0..k + j)
                    .combinations(k - 1)
                    .map(|mut cols| {
                        cols.push(k + j);
                        Check {
                            rows: (0..k).collect(),
                            cols,
                        }
                    })
                    .collect(),
            })
            .collect();

        Ok(Engine {
            q,
            k,
            r,
            route,
            pruning: opts.pruning,
            stop_at_first: opts.stop_at_first,
            witness_cap: (!opts.keep_all_witnesses).then_some(opts.witness_cap),
            sub,
            mul,
            inv,
            candidates,
            fixed_first: opts.normalize.then(|| vec![1u8; k]),
            checks,
        })
    }

    fn candidate_count(&self) -> usize {
        self.candidates.len() / self.k
    }

    fn candidate(&self, i: usize) -> &[u8] {
        &self.candidates[i * self.k..(i + 1) * self.k]
    }

    fn first_free(&self) -> usize {
        usize::from(self.fixed_first.is_some())
    }

    #[inline]
    fn entry(&self, columns: &[&[u8]], check: &Check, row: usize, col: usize) -> u8 {
        let c = check.cols[col];
        let r = check.rows[row];
        match self.route {
            Route::Minors => columns[c][r],
            Route::ColumnSets if c < self.k => u8::from(r == c),
            Route::ColumnSets => columns[c - self.k][r],
        }
    }

    fn nonsingular(&self, columns: &[&[u8]], check: &Check) -> bool {
        let s = check.rows.len();
        let q = self.q;
        if s == 1 {
            return self.entry(columns, check, 0, 0) != 0;
        }
        if s == 2 {
            let (a, b) = (self.entry(columns, check, 0, 0), self.entry(columns, check, 0, 1));
            let (c, d) = (self.entry(columns, check, 1, 0), self.entry(columns, check, 1, 1));
            return self.mul[a as usize * q + d as usize] != self.mul[b as usize * q + c as usize];
        }
        let mut m = [[0u8; MAX_SEARCH_K]; MAX_SEARCH_K];
        for (i, row) in m.iter_mut().enumerate().take(s) {
            for (j, v) in row.iter_mut().enumerate().take(s) {
                *v = self.entry(columns, check, i, j);
            }
        }
        for c in 0..s {
            let Some(p) = (c..s).find(|&i| m[i][c] != 0) else {
                return false;
            };
            m.swap(c, p);
            let inv = self.inv[m[c][c] as usize] as usize;
            let pivot = m[c];
            for row in m.iter_mut().take(s).skip(c + 1) {
                if row[c] == 0 {
                    continue;
                }
                let factor = self.mul[row[c] as usize * q + inv] as usize;
                for (v, &p) in row[c..s].iter_mut().zip(&pivot[c..s]) {
                    let t = self.mul[factor * q + p as usize];
                    *v = self.sub[*v as usize * q + t as usize];
                }
            }
        }
        true
    }

    fn column_ok(&self, columns: &[&[u8]], j: usize) -> bool {
        self.checks[j].iter().all(|c| self.nonsingular(columns, c))
    }

    fn record(&self, columns: &[&[u8]], t: &mut Tally) {
        t.found += 1;
        if self.witness_cap.is_none_or(|c| t.witnesses.len() < c) {
            let block = (0..self.k)
                .map(|row| columns.iter().map(|c| c[row] as u32).collect())
                .collect();
            t.witnesses.push(block);
        }
        if self.stop_at_first {
            t.stopped = true;
        }
    }

    /// Tries candidate `cand` as parity column `depth`. Returns false when
    /// the whole search must stop (budget or first witness).
    fn extend<'a>(&'a self, columns: &mut Vec<&'a [u8]>, depth: usize, cand: usize, cap: u64, t: &mut Tally) -> bool {
        if t.extensions == cap {
            t.truncated = true;
            return false;
        }
        t.extensions += 1;
        columns.push(self.candidate(cand));
        let leaf = depth + 1 == self.r;
        let ok = if self.pruning {
            self.column_ok(columns, depth)
        } else if leaf {
            (0..self.r).all(|j| self.column_ok(&columns[..=j], j))
        } else {
            true
        };
        let mut go_on = true;
        if !ok {
            t.rejections[depth] += 1;
        } else if leaf {
            self.record(columns, t);
            go_on = !t.stopped;
        } else {
            for next in 0..self.candidate_count() {
                if !self.extend(columns, depth + 1, next, cap, t) {
                    go_on = false;
                    break;
                }
            }
        }
        columns.pop();
        go_on
    }

    fn root(&self) -> Vec<&[u8]> {
        self.fixed_first.iter().map(Vec::as_slice).collect()
    }

    fn run_task(&self, cand: usize, cap: u64) -> Tally {
        let mut t = Tally::new(self.r);
        let mut columns = self.root();
        self.extend(&mut columns, self.first_free(), cand, cap, &mut t);
        t
    }

    fn run(&self, budget: u64, pool: Option<&rayon::ThreadPool>) -> Tally {
        let mut total = Tally::new(self.r);
        if self.first_free() == self.r {
            // every column is fixed: the all-ones block is the only candidate
            let columns = self.root();
            if self.column_ok(&columns, 0) {
                self.record(&columns, &mut total);
            } else {
                total.rejections[0] += 1;
            }
            return total;
        }
        let tasks = self.candidate_count();
        let precomputed: Option<Vec<Tally>> = pool.map(|p| {
            p.install(|| (0..tasks).into_par_iter().map(|i| self.run_task(i, budget)).collect())
        });
        for i in 0..tasks {
            let remaining = budget - total.extensions;
            let sub = match &precomputed {
                Some(v) if !v[i].truncated && v[i].extensions <= remaining => v[i].clone(),
                _ => self.run_task(i, remaining),
            };
            total.absorb(sub, self.witness_cap);
            if total.truncated || total.stopped {
                break;
            }
        }
        total
    }
}

fn validate(q: u32, n: usize, k: usize) -> Result<FiniteField> {
    if !is_prime_power(q as u64) || q > MAX_SEARCH_ORDER {
        return Err(Error::InvalidParams(format!(
            "q={q} must be a prime power no larger than {MAX_SEARCH_ORDER}"
        )));
    }
    if k == 0 || k >= n || k > MAX_SEARCH_K || n > crate::linear::MAX_DIM {
        return Err(Error::InvalidParams(format!(
            "need 1 <= k < n with k <= {MAX_SEARCH_K} and n <= {} (n={n}, k={k})",
            crate::linear::MAX_DIM
        )));
    }
    FiniteField::new(q as u64)
}

fn pool(workers: usize) -> Result<Option<rayon::ThreadPool>> {
    let workers = if workers == 0 {
        std::thread::available_parallelism().map_or(1, |n| n.get())
    } else {
        workers
    };
    if workers <= 1 {
        return Ok(None);
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map(Some)
        .map_err(|e| Error::InvalidParams(format!("cannot start {workers} workers: {e}")))
}

/// Exhaustive search for `[n, k]` MDS codes over GF(q) in systematic form.
pub fn search_systematic_mds(q: u32, n: usize, k: usize, opts: &SearchOptions) -> Result<SearchReport> {
    search_with_route(q, n, k, opts, Route::Minors)
}

/// [`search_systematic_mds`] with an explicit acceptance route.
pub fn search_with_route(q: u32, n: usize, k: usize, opts: &SearchOptions, route: Route) -> Result<SearchReport> {
    let started = Instant::now();
    let field = validate(q, n, k)?;
    let r = n - k;
    let pool = pool(opts.workers)?;
    let route = if opts.all_information_sets {
        Route::ColumnSets
    } else {
        route
    };
    let engine = Engine::new(&field, k, r, route, opts)?;

    let info_sets = if opts.all_information_sets {
        (0..n).combinations(k).count() as u64
    } else {
        1
    };
    let mut total = Tally::new(r);
    let mut searched = 0;
    for _ in 0..info_sets {
        // The check set is invariant under moving the identity columns, so
        // each information set replays the same enumeration on its own
        // coordinates.
        let t = engine.run(opts.budget - total.extensions, pool.as_ref());
        searched += 1;
        total.absorb(t, engine.witness_cap);
        if total.truncated || total.stopped {
            break;
        }
    }

    let status = if total.truncated {
        SearchStatus::BudgetExceeded
    } else if total.stopped {
        SearchStatus::StoppedAtFirst
    } else {
        SearchStatus::Complete
    };
    let (witnesses, all_witnesses) = if opts.keep_all_witnesses {
        let shown = total.witnesses.iter().take(opts.witness_cap).cloned().collect();
        (shown, Some(total.witnesses))
    } else {
        (total.witnesses, None)
    };
    Ok(SearchReport {
        q,
        n,
        k,
        route,
        pruning: opts.pruning,
        normalize: opts.normalize,
        all_information_sets: opts.all_information_sets,
        stop_at_first: opts.stop_at_first,
        budget: opts.budget,
        status,
        information_sets_searched: searched,
        candidates_examined: total.extensions,
        mds_found: total.found,
        rejections_by_depth: total.rejections,
        witnesses,
        all_witnesses,
        wall_time: started.elapsed(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCheck {
    pub column_criterion: bool,
    /// Minimum distance of the enumerated code, when small enough to enumerate.
    pub enumerated_min_distance: Option<usize>,
    pub expected_min_distance: usize,
}

impl WitnessCheck {
    pub fn passed(&self) -> bool {
        self.column_criterion
            && self
                .enumerated_min_distance
                .is_none_or(|d| d == self.expected_min_distance)
    }
}

/// Re-checks a parity block with the column criterion and, for small codes,
/// by enumerating every codeword.
pub fn check_witness(field: &FiniteField, parity: &Matrix) -> Result<WitnessCheck> {
    let code = LinearCode::from_parity_block(field.clone(), parity)?;
    let (n, k) = (code.n(), code.k());
    let small = checked_pow(field.order() as u64, k).is_some_and(|c| c <= ENUMERATION_CHECK_LIMIT);
    let enumerated_min_distance = if small {
        Some(code.codewords()?.min_distance()?)
    } else {
        None
    };
    Ok(WitnessCheck {
        column_criterion: code.is_mds(),
        enumerated_min_distance,
        expected_min_distance: n - k + 1,
    })
}

/// Largest `n <= n_cap` admitting a linear `[n, 3]` MDS code over GF(q).
///
/// Lengths are tried upward; existence is downward closed (puncturing), so
/// the first exhaustive failure ends the scan.
pub fn max_length_dim3(q: u32, n_cap: usize, budget: u64, workers: usize) -> Result<usize> {
    if q.is_multiple_of(2) || q > 9 || !is_prime_power(q as u64) {
        return Err(Error::InvalidParams(format!("q={q} must be an odd prime power <= 9")));
    }
    if n_cap < q as usize + 2 {
        return Err(Error::InvalidParams(format!("n_cap={n_cap} must be at least q+2")));
    }
    let opts = SearchOptions {
        budget,
        workers,
        normalize: true,
        stop_at_first: true,
        ..SearchOptions::default()
    };
    let mut best = 3;
    for n in 4..=n_cap {
        let report = search_systematic_mds(q, n, 3, &opts)?;
        match report.status {
            SearchStatus::BudgetExceeded => {
                return Err(Error::BudgetExceeded(format!(
                    "[{n},3] search over GF({q}) needs more than {budget} extensions"
                )))
            }
            _ if report.mds_found > 0 => best = n,
            _ => break,
        }
    }
    Ok(best)
}
