//! Structural scans: rank-one 2×3 blocks, 3×3 Hadamard submatrices, the
//! `[1 1 1 1 1 1; 1 1 ω ω ω² ω²]` pattern and H2-reducibility.
//!
//! Indices are 0-based. Every scan returns the lexicographically first witness.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exactnum::{SumValue, Turn, UnitValue};
use crate::matrix::{Matrix6, N};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanKind {
    Rank1_2x3,
    Hadamard3x3,
    Pattern1oo2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanWitness {
    pub kind: ScanKind,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

fn ratio(m: &Matrix6, i: usize, j: usize, c: usize) -> UnitValue {
    m.get(i, c).mul(&m.get(j, c).conj())
}

fn pairs() -> impl Iterator<Item = (usize, usize)> {
    (0..N).flat_map(|i| (i + 1..N).map(move |j| (i, j)))
}

fn triples() -> impl Iterator<Item = [usize; 3]> {
    (0..N).flat_map(|a| (a + 1..N).flat_map(move |b| (b + 1..N).map(move |c| [a, b, c])))
}

/// Two rows whose restrictions to three columns are proportional.
pub fn find_rank1_2x3(m: &Matrix6) -> Option<ScanWitness> {
    for (i, j) in pairs() {
        for t in triples() {
            let r0 = ratio(m, i, j, t[0]);
            if t[1..].iter().all(|&c| ratio(m, i, j, c).approx_eq(&r0)) {
                return Some(ScanWitness { kind: ScanKind::Rank1_2x3, rows: vec![i, j], cols: t.to_vec() });
            }
        }
    }
    None
}

fn block_orthogonal(m: &Matrix6, rows: &[usize], cols: &[usize]) -> bool {
    for (a, &i) in rows.iter().enumerate() {
        for &j in &rows[a + 1..] {
            let terms: Vec<UnitValue> = cols.iter().map(|&c| ratio(m, i, j, c)).collect();
            match SumValue::of(&terms) {
                Ok(s) if s.is_zero() => {}
                _ => return false,
            }
        }
    }
    true
}

/// A 3×3 submatrix with pairwise orthogonal rows.
pub fn find_3x3_hadamard_submatrix(m: &Matrix6) -> Option<ScanWitness> {
    for r in triples() {
        for c in triples() {
            if block_orthogonal(m, &r, &c) {
                return Some(ScanWitness { kind: ScanKind::Hadamard3x3, rows: r.to_vec(), cols: c.to_vec() });
            }
        }
    }
    None
}

const PATTERN_RATIOS: [(u64, u64); 6] = [(0, 1), (0, 1), (1, 3), (1, 3), (2, 3), (2, 3)];

fn matches_pattern(constant: &[Turn; N], patterned: &[Turn; N]) -> bool {
    if constant.iter().any(|t| *t != constant[0]) {
        return false;
    }
    let mut r: Vec<Turn> = patterned.iter().map(|t| t.sub(patterned[0])).collect();
    r.sort();
    let want: Vec<Turn> = PATTERN_RATIOS.iter().map(|&(p, q)| Turn::new(p as i64, q).expect("nonzero")).collect();
    r == want
}

/// A row pair (or column pair) equal to `[1 1 1 1 1 1; 1 1 ω ω ω² ω²]` up to
/// column (row) permutation and one phase per row (column).
pub fn find_pattern_1oo2(m: &Matrix6) -> Result<Option<ScanWitness>> {
    let t = m.turns()?;
    let all: Vec<usize> = (0..N).collect();
    for (i, j) in pairs() {
        if matches_pattern(&t[i], &t[j]) || matches_pattern(&t[j], &t[i]) {
            return Ok(Some(ScanWitness { kind: ScanKind::Pattern1oo2, rows: vec![i, j], cols: all }));
        }
    }
    let tt: [[Turn; N]; N] = core::array::from_fn(|i| core::array::from_fn(|j| t[j][i]));
    for (i, j) in pairs() {
        if matches_pattern(&tt[i], &tt[j]) || matches_pattern(&tt[j], &tt[i]) {
            return Ok(Some(ScanWitness { kind: ScanKind::Pattern1oo2, rows: all, cols: vec![i, j] }));
        }
    }
    Ok(None)
}

/// The 15 partitions of {0..5} into pairs, in lexicographic order.
pub fn pair_partitions() -> Vec<[(usize, usize); 3]> {
    let mut out = Vec::with_capacity(15);
    for b in 1..N {
        let rest: Vec<usize> = (1..N).filter(|&x| x != b).collect();
        for k in 1..4 {
            let c = rest[0];
            let d = rest[k];
            let mut tail: Vec<usize> = rest.iter().copied().filter(|&x| x != c && x != d).collect();
            tail.sort();
            out.push([(0, b), (c, d), (tail[0], tail[1])]);
        }
    }
    out
}

/// Row and column pairings whose nine 2×2 blocks are all Hadamard, with the
/// phases that put row `row_pairs[0].0` and column `col_pairs[0].0` to ones.
#[derive(Clone, Debug, PartialEq)]
pub struct H2Certificate {
    pub row_pairs: [(usize, usize); 3],
    pub col_pairs: [(usize, usize); 3],
    pub row_phases: [UnitValue; N],
    pub col_phases: [UnitValue; N],
}

impl H2Certificate {
    /// The normalized matrix `diag(row_phases)·M·diag(col_phases)`.
    pub fn normalized(&self, m: &Matrix6) -> Matrix6 {
        Matrix6::from_fn(|i, j| self.row_phases[i].mul(&m.get(i, j)).mul(&self.col_phases[j]))
            .expect("phases share the matrix mode")
    }

    /// Re-check every block of the normalized matrix.
    pub fn verify(&self, m: &Matrix6) -> bool {
        let n = self.normalized(m);
        let (r0, c0) = (self.row_pairs[0].0, self.col_pairs[0].0);
        let one = UnitValue::ONE;
        if !(0..N).all(|k| n.get(r0, k).approx_eq(&one) && n.get(k, c0).approx_eq(&one)) {
            return false;
        }
        self.row_pairs.iter().all(|&(a, b)| self.col_pairs.iter().all(|&(c, d)| block_orthogonal(&n, &[a, b], &[c, d])))
    }
}

/// Search all 15×15 pairings for an all-blocks-Hadamard form.
pub fn h2_reducible(m: &Matrix6) -> Option<H2Certificate> {
    let parts = pair_partitions();
    for rp in &parts {
        for cp in &parts {
            let ok = rp.iter().all(|&(a, b)| cp.iter().all(|&(c, d)| block_orthogonal(m, &[a, b], &[c, d])));
            if ok {
                let (r0, c0) = (rp[0].0, cp[0].0);
                let row_phases: [UnitValue; N] = core::array::from_fn(|i| m.get(i, c0).conj());
                let col_phases: [UnitValue; N] = core::array::from_fn(|j| m.get(r0, j).conj().mul(&m.get(r0, c0)));
                return Some(H2Certificate { row_pairs: *rp, col_pairs: *cp, row_phases, col_phases });
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MubVerdict {
    ExcludedBy3x3(ScanWitness),
    NoVerdict,
}

/// A CHM with a 3×3 Hadamard submatrix cannot sit in an MUB trio.
/// `NoVerdict` says nothing about membership.
pub fn mub_obstruction(m: &Matrix6) -> MubVerdict {
    match find_3x3_hadamard_submatrix(m) {
        Some(w) => MubVerdict::ExcludedBy3x3(w),
        None => MubVerdict::NoVerdict,
    }
}

/// Reject a witness whose slice is not proportional.
pub fn verify_rank1(m: &Matrix6, w: &ScanWitness) -> Result<bool> {
    if w.kind != ScanKind::Rank1_2x3 || w.rows.len() != 2 || w.cols.len() != 3 {
        return Err(Error::Domain("not a rank-one 2x3 witness".into()));
    }
    let r0 = ratio(m, w.rows[0], w.rows[1], w.cols[0]);
    Ok(w.cols.iter().all(|&c| ratio(m, w.rows[0], w.rows[1], c).approx_eq(&r0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog, CatalogName};
    use crate::exactnum::root_of_unity;

    fn hab() -> Matrix6 {
        catalog(&CatalogName::HAB(root_of_unity(1, 5).unwrap(), root_of_unity(1, 7).unwrap())).unwrap()
    }

    // Same scans iterating from the last candidate; sets of witnesses must agree.
    fn rank1_reversed(m: &Matrix6) -> Option<ScanWitness> {
        let ps: Vec<(usize, usize)> = pairs().collect();
        let ts: Vec<[usize; 3]> = triples().collect();
        let mut found = None;
        for &(i, j) in ps.iter().rev() {
            for t in ts.iter().rev() {
                let a = m.get(i, t[0]).mul(&m.get(j, t[0]).conj());
                let b = m.get(i, t[1]).mul(&m.get(j, t[1]).conj());
                let c = m.get(i, t[2]).mul(&m.get(j, t[2]).conj());
                if a.approx_eq(&b) && a.approx_eq(&c) {
                    found = Some(ScanWitness { kind: ScanKind::Rank1_2x3, rows: vec![i, j], cols: t.to_vec() });
                }
            }
        }
        found
    }

    #[test]
    fn rank_one_blocks() {
        let w = find_rank1_2x3(&hab()).unwrap();
        assert_eq!((w.rows.as_slice(), w.cols.as_slice()), (&[0, 1][..], &[0, 1, 2][..]));
        assert!(verify_rank1(&hab(), &w).unwrap());
        assert_eq!(rank1_reversed(&hab()), Some(w));
        for name in [CatalogName::S6_0, CatalogName::H1] {
            let m = catalog(&name).unwrap();
            assert_eq!(find_rank1_2x3(&m), None);
            assert_eq!(rank1_reversed(&m), None);
        }
    }

    #[test]
    fn hadamard_submatrices() {
        let s = catalog(&CatalogName::S6_0).unwrap();
        let w = find_3x3_hadamard_submatrix(&s).unwrap();
        assert!(block_orthogonal(&s, &w.rows, &w.cols));
        // The example block rows {0,1,2}, cols {1,2,4} is also a witness.
        assert!(block_orthogonal(&s, &[0, 1, 2], &[1, 2, 4]));
        let f = catalog(&CatalogName::F6).unwrap();
        let wf = find_3x3_hadamard_submatrix(&f).unwrap();
        assert_eq!((wf.rows.as_slice(), wf.cols.as_slice()), (&[0, 1, 2][..], &[0, 2, 4][..]));
        assert!(block_orthogonal(&f, &[0, 2, 4], &[0, 2, 4]));
        assert_eq!(find_3x3_hadamard_submatrix(&catalog(&CatalogName::H1).unwrap()), None);
        assert!(matches!(mub_obstruction(&s), MubVerdict::ExcludedBy3x3(_)));
        assert!(matches!(mub_obstruction(&f), MubVerdict::ExcludedBy3x3(_)));
        assert_eq!(mub_obstruction(&catalog(&CatalogName::H1).unwrap()), MubVerdict::NoVerdict);
    }

    #[test]
    fn tao_pattern() {
        let s = catalog(&CatalogName::S6_0).unwrap();
        assert_eq!(find_pattern_1oo2(&s).unwrap().unwrap().rows, [0, 1]);
        assert_eq!(find_pattern_1oo2(&catalog(&CatalogName::H1).unwrap()).unwrap(), None);
        // Rows 0 and 2 of the Fourier matrix are [1]*6 and [1,ω,ω²,1,ω,ω²].
        let f = catalog(&CatalogName::F6).unwrap();
        assert_eq!(find_pattern_1oo2(&f).unwrap().unwrap().rows, [0, 2]);
        assert!(find_pattern_1oo2(&s.to_float()).is_err());
    }

    #[test]
    fn partitions() {
        let p = pair_partitions();
        assert_eq!(p.len(), 15);
        assert_eq!(p[0], [(0, 1), (2, 3), (4, 5)]);
        let mut sorted = p.clone();
        sorted.sort();
        assert_eq!(sorted, p);
    }

    #[test]
    fn h2_certificates() {
        let c = h2_reducible(&hab()).unwrap();
        assert_eq!(c.row_pairs, [(0, 1), (2, 3), (4, 5)]);
        assert_eq!(c.col_pairs, [(0, 3), (1, 4), (2, 5)]);
        assert!(c.verify(&hab()));
        let h = catalog(&CatalogName::H1).unwrap();
        let ch = h2_reducible(&h).unwrap();
        assert!(ch.verify(&h));
        assert_eq!(h2_reducible(&catalog(&CatalogName::S6_0).unwrap()), None);
    }
}
