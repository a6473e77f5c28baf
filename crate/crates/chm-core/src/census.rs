//! Exhaustive search for 6×6 complex Hadamard matrices over a finite alphabet.
//!
//! Matrices are built row by row from a table of pairwise orthogonal rows.
//! Isomorph rejection keeps only matrices whose rows are strictly increasing
//! and whose columns are nondecreasing, both lexicographically in the symbol
//! order of the alphabet. Alternately sorting rows and columns strictly
//! decreases the row-major word, so every matrix has such a form. When the
//! alphabet is a group, rows and columns are also dephased so that row 0 and
//! column 0 are all ones.
//!
//! The search splits into independent tasks by its first two rows. Callers may
//! run the tasks on any number of workers and merge them with
//! [`CensusPlan::merge`]; the merged report does not depend on the schedule.

use alloc::vec;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicU64, Ordering};

use crate::catalog::{catalog, CatalogName};
use crate::equiv::{complex_equivalent, EquivalenceCertificate};
use crate::error::{domain, Error, Result};
use crate::exactnum::{common_order, CycRing, Turn, UnitValue};
use crate::matrix::{Matrix6, N};

pub const DEFAULT_BUDGET: u64 = 1_000_000_000;
const FLUSH: u64 = 4096;

/// A set of 2 to 4 distinct exact unimodular values, sorted by turn.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    values: Vec<Turn>,
    /// `closed[k]`: multiplying every value by `conj(values[k])` stays inside.
    closed: Vec<bool>,
}

impl Alphabet {
    pub fn new(values: &[UnitValue]) -> Result<Alphabet> {
        let mut ts = Vec::with_capacity(values.len());
        for v in values {
            ts.push(v.turn().ok_or(Error::NeedsExact)?);
        }
        ts.sort();
        ts.dedup();
        if ts.len() != values.len() {
            return domain("alphabet values must be distinct");
        }
        if !(2..=4).contains(&ts.len()) {
            return domain("alphabet must have 2 to 4 values");
        }
        let closed = ts.iter().map(|&v| ts.iter().all(|&x| ts.contains(&x.sub(v)))).collect();
        Ok(Alphabet { values: ts, closed })
    }

    pub fn values(&self) -> Vec<UnitValue> {
        self.values.iter().map(|&t| UnitValue::Root(t)).collect()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn closure_flags(&self) -> &[bool] {
        &self.closed
    }

    /// Closed under every `x ↦ x·conj(v)`, hence a group containing 1.
    pub fn is_group(&self) -> bool {
        self.closed.iter().all(|&c| c)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CensusOptions {
    pub budget: u64,
    /// Require nondecreasing columns.
    pub column_reduction: bool,
    /// Fix row 0 and column 0 to ones when the alphabet is a group.
    pub dephase: bool,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions { budget: DEFAULT_BUDGET, column_reduction: true, dephase: true }
    }
}

/// The enumeration result before classification.
#[derive(Clone, Debug, PartialEq)]
pub struct CensusReport {
    pub alphabet: Alphabet,
    /// All matrices found, in lexicographic order of their rows.
    pub matrices: Vec<Matrix6>,
    /// One matrix per complex equivalence class, in order of first appearance.
    pub representatives: Vec<Matrix6>,
    /// `class_of[k]`: index into `representatives` for `matrices[k]`.
    pub class_of: Vec<usize>,
    pub nodes: u64,
    pub complete: bool,
}

impl CensusReport {
    pub fn raw_count(&self) -> usize {
        self.matrices.len()
    }
}

/// Matrices found by one task, as row indices into the plan's row table.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TaskResult {
    pub found: Vec<[u32; N]>,
    pub nodes: u64,
    pub complete: bool,
}

/// Precomputed rows and orthogonality table for one alphabet.
pub struct CensusPlan {
    alphabet: Alphabet,
    options: CensusOptions,
    /// Symbol indices per row, in increasing lexicographic order.
    rows: Vec<[u8; N]>,
    /// Bit `j` set iff `row[j] <= row[j + 1]`.
    le: Vec<u8>,
    /// Bit `j` set iff `row[j] == row[j + 1]`.
    eq: Vec<u8>,
    /// `orth[r]`: bitset of rows orthogonal to row `r`.
    orth: Vec<Vec<u64>>,
    words: usize,
    dephased: bool,
}

const ALL_PAIRS: u8 = (1 << (N - 1)) - 1;

impl CensusPlan {
    pub fn new(alphabet: &Alphabet, options: CensusOptions) -> Result<CensusPlan> {
        let k = alphabet.len();
        let dephased = options.dephase && alphabet.is_group();
        let order = common_order(alphabet.values.iter().copied(), 1)?;
        let ring = CycRing::new(order)?;
        // Reduced vector of each ratio x·conj(y).
        let ratio: Vec<Vec<Vec<i64>>> = alphabet
            .values
            .iter()
            .map(|&x| {
                alphabet
                    .values
                    .iter()
                    .map(|&y| ring.element(&[(x.sub(y).exponent_at(order) as i64, 1)]).coeffs().to_vec())
                    .collect()
            })
            .collect();

        let free = if dephased { N - 1 } else { N };
        let count = k.pow(free as u32);
        let mut rows = Vec::with_capacity(count);
        for code in 0..count {
            let mut r = [0u8; N];
            let mut c = code;
            for slot in r.iter_mut().rev().take(free) {
                *slot = (c % k) as u8;
                c /= k;
            }
            rows.push(r);
        }
        let le = rows.iter().map(|r| (0..N - 1).filter(|&j| r[j] <= r[j + 1]).fold(0u8, |m, j| m | 1 << j)).collect();
        let eq = rows.iter().map(|r| (0..N - 1).filter(|&j| r[j] == r[j + 1]).fold(0u8, |m, j| m | 1 << j)).collect();

        let words = count.div_ceil(64);
        let mut orth = vec![vec![0u64; words]; count];
        let dim = ring.dim();
        let mut acc = vec![0i64; dim];
        for a in 0..count {
            for b in a + 1..count {
                acc.iter_mut().for_each(|x| *x = 0);
                for c in 0..N {
                    let v = &ratio[rows[a][c] as usize][rows[b][c] as usize];
                    acc.iter_mut().zip(v).for_each(|(s, x)| *s += x);
                }
                if acc.iter().all(|&x| x == 0) {
                    orth[a][b / 64] |= 1 << (b % 64);
                    orth[b][a / 64] |= 1 << (a % 64);
                }
            }
        }
        Ok(CensusPlan { alphabet: alphabet.clone(), options, rows, le, eq, orth, words, dephased })
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    fn admissible(&self, tie: u8, r: usize) -> bool {
        !self.options.column_reduction || tie & !self.le[r] == 0
    }

    /// Two-row prefixes, one per task, in increasing order.
    pub fn tasks(&self) -> Vec<[u32; 2]> {
        let firsts: Vec<usize> = if self.dephased { vec![0] } else { (0..self.rows.len()).collect() };
        let mut out = Vec::new();
        for r0 in firsts {
            if !self.admissible(ALL_PAIRS, r0) {
                continue;
            }
            let tie = ALL_PAIRS & self.eq[r0];
            for r1 in r0 + 1..self.rows.len() {
                if self.bit(&self.orth[r0], r1) && self.admissible(tie, r1) {
                    out.push([r0 as u32, r1 as u32]);
                }
            }
        }
        out
    }

    fn bit(&self, set: &[u64], r: usize) -> bool {
        set[r / 64] >> (r % 64) & 1 == 1
    }

    /// Runs the subtree below one prefix, charging nodes to `spent`.
    pub fn run_task(&self, prefix: [u32; 2], spent: &AtomicU64) -> TaskResult {
        let (r0, r1) = (prefix[0] as usize, prefix[1] as usize);
        let tie = ALL_PAIRS & self.eq[r0] & self.eq[r1];
        let cand: Vec<u64> = self.orth[r0].iter().zip(&self.orth[r1]).map(|(a, b)| a & b).collect();
        let seen = spent.load(Ordering::Relaxed);
        let mut st = Walk { plan: self, spent, local: 2, pending: 2, seen, stop: false, found: Vec::new(), chosen: [0; N] };
        st.chosen[0] = r0 as u32;
        st.chosen[1] = r1 as u32;
        st.descend(2, r1, tie, &cand);
        spent.fetch_add(st.pending, Ordering::Relaxed);
        TaskResult { found: st.found, nodes: st.local, complete: !st.stop }
    }

    pub fn matrix(&self, rows: &[u32; N]) -> Matrix6 {
        Matrix6::from_turns(core::array::from_fn(|i| {
            core::array::from_fn(|j| self.alphabet.values[self.rows[rows[i] as usize][j] as usize])
        }))
    }

    /// Merges task results given in task order and groups them into classes.
    pub fn merge(&self, results: Vec<TaskResult>) -> CensusReport {
        let mut matrices = Vec::new();
        let mut nodes = 0;
        let mut complete = true;
        for r in results {
            nodes += r.nodes;
            complete &= r.complete;
            matrices.extend(r.found.iter().map(|rows| self.matrix(rows)));
        }
        let (representatives, class_of) = group_classes(&matrices);
        CensusReport { alphabet: self.alphabet.clone(), matrices, representatives, class_of, nodes, complete }
    }
}

/// Assigns each matrix to the first earlier representative it is complex
/// equivalent to, or makes it a new representative.
pub fn group_classes(matrices: &[Matrix6]) -> (Vec<Matrix6>, Vec<usize>) {
    let mut reps: Vec<Matrix6> = Vec::new();
    let mut class_of = Vec::with_capacity(matrices.len());
    for m in matrices {
        match reps.iter().position(|r| complex_equivalent(r, m).certificate().is_some()) {
            Some(k) => class_of.push(k),
            None => {
                class_of.push(reps.len());
                reps.push(*m);
            }
        }
    }
    (reps, class_of)
}

struct Walk<'a> {
    plan: &'a CensusPlan,
    spent: &'a AtomicU64,
    /// Nodes visited by this task.
    local: u64,
    /// Nodes not yet added to `spent`.
    pending: u64,
    /// Shared total as of the last flush.
    seen: u64,
    stop: bool,
    found: Vec<[u32; N]>,
    chosen: [u32; N],
}

impl Walk<'_> {
    fn descend(&mut self, depth: usize, last: usize, tie: u8, cand: &[u64]) {
        if depth == N {
            self.found.push(self.chosen);
            return;
        }
        let plan = self.plan;
        let start = last + 1;
        for w in start / 64..plan.words {
            let mut bits = cand[w];
            if w == start / 64 {
                bits &= !0u64 << (start % 64);
            }
            while bits != 0 {
                let r = w * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if !plan.admissible(tie, r) {
                    continue;
                }
                self.local += 1;
                self.pending += 1;
                if self.pending == FLUSH {
                    self.seen = self.spent.fetch_add(FLUSH, Ordering::Relaxed) + FLUSH;
                    self.pending = 0;
                }
                if self.stop || self.seen + self.pending > plan.options.budget {
                    self.stop = true;
                    return;
                }
                self.chosen[depth] = r as u32;
                if depth + 1 == N {
                    self.descend(N, r, tie, cand);
                } else {
                    let next: Vec<u64> = cand.iter().zip(&plan.orth[r]).map(|(a, b)| a & b).collect();
                    if next.iter().any(|&x| x != 0) {
                        self.descend(depth + 1, r, tie & plan.eq[r], &next);
                    }
                }
            }
        }
    }
}

/// Single-threaded census.
pub fn enumerate_chms(alphabet: &Alphabet, options: CensusOptions) -> Result<CensusReport> {
    let plan = CensusPlan::new(alphabet, options)?;
    let spent = AtomicU64::new(0);
    let results = plan.tasks().into_iter().map(|t| plan.run_task(t, &spent)).collect();
    Ok(plan.merge(results))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassLabel {
    S6_0,
    H1,
    /// Equivalent to neither catalog matrix.
    Other,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LabeledClass {
    pub representative: Matrix6,
    pub label: ClassLabel,
    /// Maps the catalog matrix onto the representative.
    pub certificate: Option<EquivalenceCertificate>,
    pub members: usize,
}

/// Labels each class by complex equivalence to S6(0) or H(1).
pub fn classify_census(report: &CensusReport) -> Result<Vec<LabeledClass>> {
    if !report.complete {
        return domain("census is incomplete; refusing to classify");
    }
    let s0 = catalog(&CatalogName::S6_0)?;
    let h1 = catalog(&CatalogName::H1)?;
    Ok(report
        .representatives
        .iter()
        .enumerate()
        .map(|(k, rep)| {
            let members = report.class_of.iter().filter(|&&c| c == k).count();
            let (label, certificate) = if let Some(c) = complex_equivalent(&s0, rep).certificate() {
                (ClassLabel::S6_0, Some(*c))
            } else if let Some(c) = complex_equivalent(&h1, rep).certificate() {
                (ClassLabel::H1, Some(*c))
            } else {
                (ClassLabel::Other, None)
            };
            LabeledClass { representative: *rep, label, certificate, members }
        })
        .collect())
}
