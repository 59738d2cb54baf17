//! Exhaustive enumeration of isometric embeddings `Λ ↪ ℤᵐ` up to signed
//! permutations of the coordinates.
//!
//! Basis images are placed one row at a time in Gram order. A candidate row
//! is built coordinate by coordinate over the columns already in use,
//! pruned by Cauchy–Schwarz against the inner products it still owes to the
//! earlier rows, and then completed with fresh columns.
//!
//! Two symmetry reductions keep the tree small:
//!
//! * Fresh columns are all zero so far, so they may be permuted and negated
//!   freely. They are introduced left to right with positive, non-increasing
//!   entries.
//! * Used columns that agree on every placed row form contiguous groups; the
//!   current row must be non-increasing inside each group.
//!
//! Any embedding can be moved into this normal form by a signed permutation
//! chosen row by row, so no class is lost. Residual symmetry can still
//! produce the same class twice, which the caller removes with
//! [`canonical_form`](super::canonical_form).

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::embedding::{canonical_form, EmbeddingClass, EmbeddingMatrix};
use super::GramLattice;
use crate::error::{Error, LimitKind, Result, SearchStats};

/// Default node budget for a single search.
pub const DEFAULT_MAX_NODES: u64 = 100_000_000;

/// Budgets for one search. Running out is reported, never silently truncated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_nodes: u64,
    pub max_time: Option<Duration>,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_nodes: DEFAULT_MAX_NODES, max_time: None }
    }
}

impl SearchLimits {
    pub fn nodes(max_nodes: u64) -> Self {
        SearchLimits { max_nodes, ..Default::default() }
    }
}

/// What a raw search did: counters plus the limit that stopped it, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOutcome {
    pub stats: SearchStats,
    pub limit_hit: Option<LimitKind>,
    pub elapsed: Duration,
}

/// Visits every embedding of `l` into ℤᵐ that is in the search normal form.
///
/// `on_leaf` receives each complete embedding; it may be called several
/// times for one class. Every leaf is checked against the Gram matrix before
/// it is reported.
pub fn search_embeddings<F>(l: &GramLattice, m: usize, limits: SearchLimits, on_leaf: F) -> Result<SearchOutcome>
where
    F: FnMut(&EmbeddingMatrix),
{
    if m == 0 {
        return Err(Error::invalid("ambient rank must be at least 1"));
    }
    if let Some(i) = (0..l.rank()).find(|&i| l.entry(i, i) < 1) {
        return Err(Error::invalid(format!("vertex {} has nonpositive norm {}", i + 1, l.entry(i, i))));
    }
    let mut s = Search {
        gram: l.gram(),
        m,
        rows: Vec::with_capacity(l.rank()),
        used: 0,
        group_start: vec![true; m],
        limits,
        stats: SearchStats::default(),
        steps: 0,
        start: Instant::now(),
        stop: None,
        bad_leaf: false,
        on_leaf,
    };
    s.place_row();
    if s.bad_leaf {
        return Err(Error::internal("search produced a row set whose Gram matrix is wrong"));
    }
    Ok(SearchOutcome { stats: s.stats, limit_hit: s.stop, elapsed: s.start.elapsed() })
}

struct Search<'a, F> {
    gram: &'a [Vec<i64>],
    m: usize,
    rows: Vec<Vec<i64>>,
    used: usize,
    /// `group_start[c]` marks the first column of a group of identical used columns.
    group_start: Vec<bool>,
    limits: SearchLimits,
    stats: SearchStats,
    steps: u64,
    start: Instant,
    stop: Option<LimitKind>,
    bad_leaf: bool,
    on_leaf: F,
}

/// Per-row scratch: the candidate row and the inner products still owed.
struct RowState {
    cand: Vec<i64>,
    residual: Vec<i64>,
    /// `tails[j][c]` = Σ_{c' ≥ c, c' < used} rows[j][c']².
    tails: Vec<Vec<i64>>,
}

impl<F: FnMut(&EmbeddingMatrix)> Search<'_, F> {
    fn place_row(&mut self) {
        let i = self.rows.len();
        if i == self.gram.len() {
            self.leaf();
            return;
        }
        let used = self.used;
        let tails = self
            .rows
            .iter()
            .map(|r| {
                let mut t = vec![0; used + 1];
                for c in (0..used).rev() {
                    t[c] = t[c + 1] + r[c] * r[c];
                }
                t
            })
            .collect();
        let mut st = RowState { cand: vec![0; self.m], residual: (0..i).map(|j| self.gram[i][j]).collect(), tails };
        self.assign(&mut st, 0, self.gram[i][i]);
    }

    fn tick(&mut self) -> bool {
        if self.stop.is_some() {
            return false;
        }
        self.steps += 1;
        if self.steps & 0xffff == 0 {
            if let Some(t) = self.limits.max_time {
                if self.start.elapsed() > t {
                    self.stop = Some(LimitKind::Time);
                    return false;
                }
            }
        }
        true
    }

    /// Chooses the entry of the current row in used column `c`.
    fn assign(&mut self, st: &mut RowState, c: usize, rem: i64) {
        if !self.tick() {
            return;
        }
        if c == self.used {
            if st.residual.iter().all(|&r| r == 0) {
                let cap = isqrt(rem);
                self.extend_fresh(st, self.used, rem, cap);
            }
            return;
        }
        for (j, &r) in st.residual.iter().enumerate() {
            if r != 0 && r * r > rem * st.tails[j][c] {
                return;
            }
        }
        let s = isqrt(rem);
        let hi = if c > 0 && !self.group_start[c] { s.min(st.cand[c - 1]) } else { s };
        let mut x = hi;
        while x >= -s {
            st.cand[c] = x;
            if x != 0 {
                for (j, r) in st.residual.iter_mut().enumerate() {
                    *r -= x * self.rows[j][c];
                }
            }
            self.assign(st, c + 1, rem - x * x);
            if x != 0 {
                for (j, r) in st.residual.iter_mut().enumerate() {
                    *r += x * self.rows[j][c];
                }
            }
            if self.stop.is_some() {
                break;
            }
            x -= 1;
        }
        st.cand[c] = 0;
    }

    /// Writes `rem` as a sum of non-increasing positive squares in fresh columns.
    fn extend_fresh(&mut self, st: &mut RowState, next: usize, rem: i64, cap: i64) {
        if rem == 0 {
            self.commit(st, next);
            return;
        }
        if next == self.m {
            return;
        }
        let mut x = cap.min(isqrt(rem));
        while x >= 1 {
            st.cand[next] = x;
            self.extend_fresh(st, next + 1, rem - x * x, x);
            if self.stop.is_some() {
                break;
            }
            x -= 1;
        }
        st.cand[next] = 0;
    }

    fn commit(&mut self, st: &RowState, new_used: usize) {
        if self.stop.is_some() {
            return;
        }
        if self.stats.nodes >= self.limits.max_nodes {
            self.stop = Some(LimitKind::Nodes);
            return;
        }
        self.stats.nodes += 1;

        let saved_groups = self.group_start.clone();
        let saved_used = self.used;
        let row = &st.cand;
        for c in 1..saved_used {
            if row[c] != row[c - 1] {
                self.group_start[c] = true;
            }
        }
        for c in saved_used..new_used {
            self.group_start[c] = c == saved_used || row[c] != row[c - 1];
        }
        self.used = new_used;
        self.rows.push(row.clone());

        self.place_row();

        self.rows.pop();
        self.used = saved_used;
        self.group_start = saved_groups;
    }

    fn leaf(&mut self) {
        self.stats.leaves += 1;
        let a = EmbeddingMatrix::new(self.rows.clone(), self.m).expect("rows have ambient length");
        if a.gram() != self.gram {
            self.bad_leaf = true;
            self.stop = Some(LimitKind::Nodes);
            return;
        }
        (self.on_leaf)(&a);
    }
}

fn isqrt(n: i64) -> i64 {
    if n <= 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Distinct classes found by [`enumerate_embedding_classes`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassEnumeration {
    /// Sorted by canonical representative.
    pub classes: Vec<EmbeddingClass>,
    pub stats: SearchStats,
    pub elapsed: Duration,
}

/// All classes of isometric embeddings of `l` into ℤᵐ, in canonical order.
///
/// Fails with [`Error::LimitExceeded`] if a budget runs out; the error
/// carries the counters reached so far.
pub fn enumerate_embedding_classes(l: &GramLattice, m: usize, limits: SearchLimits) -> Result<ClassEnumeration> {
    let mut found = BTreeSet::new();
    let out = search_embeddings(l, m, limits, |a| {
        found.insert(canonical_form(a));
    })?;
    if let Some(kind) = out.limit_hit {
        return Err(Error::LimitExceeded { kind, stats: out.stats });
    }
    let classes = found.iter().map(EmbeddingClass::of).collect();
    Ok(ClassEnumeration { classes, stats: out.stats, elapsed: out.elapsed })
}

/// Class count at one ambient rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbientCount {
    #[serde(with = "crate::decimal")]
    pub ambient: usize,
    #[serde(with = "crate::decimal")]
    pub classes: usize,
}

/// Class counts for `m, m+1, …, m+extra`; equal trailing counts are the
/// evidence that the ambient rank is large enough.
pub fn class_counts_by_ambient(
    l: &GramLattice,
    m: usize,
    extra: usize,
    limits: SearchLimits,
) -> Result<Vec<AmbientCount>> {
    (m..=m + extra)
        .map(|ambient| {
            let e = enumerate_embedding_classes(l, ambient, limits)?;
            Ok(AmbientCount { ambient, classes: e.classes.len() })
        })
        .collect()
}
