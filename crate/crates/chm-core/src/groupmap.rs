//! Residue encodings of formal entry ratios.
//!
//! Dephasing a matrix by its first row turns every entry into a formal
//! ratio like `a` or `ab̄`. A [`GroupMap`] sends those ratios into `Z5` or
//! `Z7` so that `x·ȳ` becomes `f(x) − f(y)`, which turns inner-product
//! constraints into row-completion problems over small integers. The maps
//! are not homomorphisms: products such as `a·a²` fall outside the table and
//! are reported as [`Error::Undefined`].

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{domain, Error, Result};
use crate::torus::{CountArray, Structure};

/// Row length of every residue row.
pub const ROW: usize = 6;

/// A formal monomial `a^i b^j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub [i8; 2]);

impl Symbol {
    pub const ONE: Symbol = Symbol([0, 0]);
    pub const A: Symbol = Symbol([1, 0]);
    pub const B: Symbol = Symbol([0, 1]);

    pub fn conj(self) -> Symbol {
        Symbol([-self.0[0], -self.0[1]])
    }

    /// `self · conj(other)`.
    pub fn ratio(self, other: Symbol) -> Symbol {
        Symbol([self.0[0] - other.0[0], self.0[1] - other.0[1]])
    }

    /// Accepts the names [`Display`](fmt::Display) prints, with `_` as an
    /// ASCII bar and `2` for `²`.
    pub fn parse(s: &str) -> Option<Symbol> {
        let t = s.trim();
        if t == "1" {
            return Some(Symbol::ONE);
        }
        let mut e = [0i8; 2];
        let mut chars = t.chars().peekable();
        while let Some(c) = chars.next() {
            let (v, mut k) = match c {
                'a' => (0, 1),
                'ā' => (0, -1),
                'b' => (1, 1),
                _ => return None,
            };
            if matches!(chars.peek(), Some('\u{304}' | '_')) {
                chars.next();
                k = -k;
            }
            if matches!(chars.peek(), Some('²' | '2')) {
                chars.next();
                k *= 2;
            }
            e[v] += k;
        }
        (!t.is_empty()).then_some(Symbol(e))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.0 {
            [0, 0] => "1",
            [1, 0] => "a",
            [-1, 0] => "ā",
            [2, 0] => "a²",
            [-2, 0] => "ā²",
            [0, 1] => "b",
            [0, -1] => "b\u{304}",
            [1, -1] => "ab\u{304}",
            [-1, 1] => "bā",
            [i, j] => return write!(f, "a^{i}b^{j}"),
        };
        f.write_str(name)
    }
}

/// The formal symbols of each table in residue order.
const Z5_SYMBOLS: [Symbol; 5] = [Symbol([0, 0]), Symbol([1, 0]), Symbol([2, 0]), Symbol([-2, 0]), Symbol([-1, 0])];
const Z7_SYMBOLS: [Symbol; 7] =
    [Symbol([0, 0]), Symbol([1, 0]), Symbol([0, -1]), Symbol([1, -1]), Symbol([-1, 1]), Symbol([0, 1]), Symbol([-1, 0])];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupMap {
    modulus: u8,
    /// `inverse[r]` is the symbol with residue `r`.
    inverse: &'static [Symbol],
}

impl GroupMap {
    /// `f(1)=0, f(a)=1, f(ā)=4, f(a²)=2, f(ā²)=3`. The inverse list
    /// `[1, a, a², ā², ā]` is the same table read by residue.
    pub const fn z5() -> GroupMap {
        GroupMap { modulus: 5, inverse: &Z5_SYMBOLS }
    }

    /// `f(1)=0, f(a)=1, f(ā)=6, f(b)=5, f(b̄)=2, f(ab̄)=3, f(bā)=4`.
    pub const fn z7() -> GroupMap {
        GroupMap { modulus: 7, inverse: &Z7_SYMBOLS }
    }

    pub fn for_modulus(m: u8) -> Result<GroupMap> {
        match m {
            5 => Ok(GroupMap::z5()),
            7 => Ok(GroupMap::z7()),
            _ => domain("residue maps exist for moduli 5 and 7 only"),
        }
    }

    pub fn modulus(&self) -> u8 {
        self.modulus
    }

    pub fn symbols(&self) -> &'static [Symbol] {
        self.inverse
    }

    pub fn residue(&self, s: Symbol) -> Result<u8> {
        self.inverse.iter().position(|&t| t == s).map(|r| r as u8).ok_or_else(|| Error::Undefined(s.to_string()))
    }

    pub fn symbol(&self, r: u8) -> Result<Symbol> {
        self.inverse.get(r as usize).copied().ok_or_else(|| Error::Domain(alloc::format!("residue {r} out of range")))
    }

    /// Residue of `x · conj(y)`, undefined when that product leaves the table.
    pub fn ratio_residue(&self, x: Symbol, y: Symbol) -> Result<u8> {
        self.residue(x.ratio(y))
    }

    /// Residue weights of the formal products of `s` in array order.
    pub fn weights(&self, s: Structure) -> Result<Vec<u8>> {
        let products: &[[i8; 2]] = match (self.modulus, s) {
            (5, Structure::Conj) => &[[0, 0], [1, 0], [-1, 0], [2, 0], [-2, 0]],
            (7, Structure::Generic) => &GENERIC_PRODUCTS,
            _ => return domain("residue weights exist for conj under Z5 and generic under Z7"),
        };
        products.iter().map(|&p| self.residue(Symbol(p))).collect()
    }
}

/// Generic formal products in array order `[1, a, ā, b, b̄, ab̄, bā]`.
const GENERIC_PRODUCTS: [[i8; 2]; 7] = [[0, 0], [1, 0], [-1, 0], [0, 1], [0, -1], [1, -1], [-1, 1]];

pub type ResidueRow = [u8; ROW];

/// Componentwise `f` of a row of formal symbols.
pub fn residue_map(map: &GroupMap, row: &[Symbol]) -> Result<Vec<u8>> {
    row.iter().map(|&s| map.residue(s)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueProduct {
    /// `x_i − y_i mod m`.
    pub diffs: ResidueRow,
    /// The differences sorted, which is what the completion tests compare.
    pub multiset: ResidueRow,
    /// Integer sum of the reduced differences.
    pub sum: u32,
    pub sum_mod: u8,
}

pub fn residue_inner_product(map: &GroupMap, x: &ResidueRow, y: &ResidueRow) -> ResidueProduct {
    let m = map.modulus;
    let diffs: ResidueRow = core::array::from_fn(|i| (x[i] + m - y[i] % m) % m);
    let mut multiset = diffs;
    multiset.sort_unstable();
    let sum: u32 = diffs.iter().map(|&d| d as u32).sum();
    ResidueProduct { diffs, multiset, sum, sum_mod: (sum % m as u32) as u8 }
}

/// `Σ n_i · f(product_i)`, the residue image of an original equation.
pub fn image_sum(map: &GroupMap, array: &CountArray) -> Result<u32> {
    let w = map.weights(array.structure())?;
    Ok(array.counts().iter().zip(&w).map(|(&n, &w)| n as u32 * w as u32).sum())
}

/// The residue multiset a count array forces on a row next to the all-zero
/// first row.
pub fn row_multiset(map: &GroupMap, array: &CountArray) -> Result<ResidueRow> {
    let w = map.weights(array.structure())?;
    let mut v: Vec<u8> = array.counts().iter().zip(&w).flat_map(|(&n, &w)| core::iter::repeat(w).take(n as usize)).collect();
    v.sort_unstable();
    v.try_into().map_err(|_| Error::Domain(String::from("count arrays sum to six")))
}

/// Arrays whose residue image is divisible by 7.
pub fn z7_sum_filter(arrays: &[CountArray]) -> Result<Vec<CountArray>> {
    let map = GroupMap::z7();
    let mut out = Vec::new();
    for a in arrays {
        if a.structure() != Structure::Generic {
            return domain("the Z7 filter applies to generic arrays");
        }
        if image_sum(&map, a)? % 7 == 0 {
            out.push(a.clone());
        }
    }
    Ok(out)
}

/// Why a candidate row was rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub row: ResidueRow,
    /// Index of the fixed row (or the other candidate) it fails against.
    pub against: usize,
    pub got: ResidueRow,
}

/// Rows equal up to column transpositions that fix every fixed row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// Lexicographically smallest member.
    pub rep: ResidueRow,
    pub members: Vec<ResidueRow>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Completion {
    /// Column transpositions fixing all fixed rows, as 0-based pairs.
    pub swaps: Vec<(usize, usize)>,
    pub orbits: Vec<Orbit>,
    /// One violation per rejected candidate, in candidate order. Complete,
    /// so an empty `orbits` is certified by re-checking these.
    pub violations: Vec<Violation>,
}

impl Completion {
    pub fn rows(&self) -> impl Iterator<Item = &ResidueRow> {
        self.orbits.iter().flat_map(|o| &o.members)
    }

    pub fn is_contradiction(&self) -> bool {
        self.orbits.is_empty()
    }
}

fn sorted(mut r: ResidueRow) -> ResidueRow {
    r.sort_unstable();
    r
}

fn distinct_permutations(ms: &ResidueRow) -> Vec<ResidueRow> {
    let mut cur = sorted(*ms);
    let mut out = vec![cur];
    // Next lexicographic permutation until the sequence is non-increasing.
    loop {
        let Some(i) = (0..ROW - 1).rev().find(|&i| cur[i] < cur[i + 1]) else { return out };
        let j = (i + 1..ROW).rev().find(|&j| cur[j] > cur[i]).expect("a larger element exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur);
    }
}

fn admissible(map: &GroupMap, x: &ResidueRow, y: &ResidueRow, targets: &[ResidueRow]) -> core::result::Result<(), ResidueRow> {
    let p = residue_inner_product(map, x, y);
    if targets.iter().any(|t| sorted(*t) == p.multiset) {
        Ok(())
    } else {
        Err(p.multiset)
    }
}

fn check_rows(map: &GroupMap, rows: &[ResidueRow]) -> Result<()> {
    if rows.iter().flatten().any(|&r| r >= map.modulus) {
        return domain("residue out of range for the modulus");
    }
    Ok(())
}

/// All rows that are permutations of one of `rows` and whose residue inner
/// product with every fixed row is a permutation of some target.
pub fn complete_rows(map: &GroupMap, fixed: &[ResidueRow], rows: &[ResidueRow], targets: &[ResidueRow]) -> Result<Completion> {
    check_rows(map, fixed)?;
    check_rows(map, rows)?;
    check_rows(map, targets)?;
    let swaps: Vec<(usize, usize)> =
        (0..ROW).flat_map(|i| (i + 1..ROW).map(move |j| (i, j))).filter(|&(i, j)| fixed.iter().all(|f| f[i] == f[j])).collect();
    let shapes: BTreeSet<ResidueRow> = rows.iter().map(|r| sorted(*r)).collect();
    let mut found = Vec::new();
    let mut violations = Vec::new();
    for shape in &shapes {
        for cand in distinct_permutations(shape) {
            match fixed.iter().enumerate().find_map(|(k, f)| admissible(map, f, &cand, targets).err().map(|got| (k, got))) {
                None => found.push(cand),
                Some((against, got)) => violations.push(Violation { row: cand, against, got }),
            }
        }
    }
    let mut orbits: Vec<Orbit> = Vec::new();
    let mut seen: BTreeSet<ResidueRow> = BTreeSet::new();
    for &r in &found {
        if seen.contains(&r) {
            continue;
        }
        let mut members: BTreeSet<ResidueRow> = BTreeSet::from([r]);
        let mut stack = vec![r];
        while let Some(x) = stack.pop() {
            for &(i, j) in &swaps {
                let mut y = x;
                y.swap(i, j);
                if members.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen.extend(members.iter().copied());
        let members: Vec<ResidueRow> = members.into_iter().collect();
        orbits.push(Orbit { rep: members[0], members });
    }
    Ok(Completion { swaps, orbits, violations })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCheck {
    /// Candidate index pairs whose mutual inner product is admissible.
    pub compatible: Vec<(usize, usize)>,
    /// Every failing pair with its inner-product multiset.
    pub failures: Vec<(usize, usize, ResidueRow)>,
}

impl PairCheck {
    /// No two candidates can sit in the same matrix.
    pub fn is_contradiction(&self) -> bool {
        self.compatible.is_empty()
    }
}

/// Tests every unordered pair of candidate rows against the targets.
pub fn pairwise_admissibility(map: &GroupMap, candidates: &[ResidueRow], targets: &[ResidueRow]) -> Result<PairCheck> {
    check_rows(map, candidates)?;
    let mut out = PairCheck { compatible: Vec::new(), failures: Vec::new() };
    for i in 0..candidates.len() {
        for j in i + 1..candidates.len() {
            match admissible(map, &candidates[i], &candidates[j], targets) {
                Ok(()) => out.compatible.push((i, j)),
                Err(got) => out.failures.push((i, j, got)),
            }
        }
    }
    Ok(out)
}

/// Largest vertex count [`ramsey_check`] accepts.
pub const RAMSEY_MAX: usize = 8;

/// A 2-colouring of the edges of `K_n`, edges `(i, j)` with `i < j` in
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeColoring {
    pub n: usize,
    pub colors: Vec<bool>,
}

/// Position of edge `{i, j}` in lexicographic edge order.
pub fn edge_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

impl EdgeColoring {
    pub fn from_bits(n: usize, bits: u64) -> EdgeColoring {
        let e = n * (n - 1) / 2;
        EdgeColoring { n, colors: (0..e).map(|k| bits >> k & 1 == 1).collect() }
    }

    pub fn color(&self, i: usize, j: usize) -> bool {
        self.colors[edge_index(self.n, i, j)]
    }

    /// The colouring with vertex `v` renamed `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> EdgeColoring {
        let mut colors = vec![false; self.colors.len()];
        for i in 0..self.n {
            for j in i + 1..self.n {
                colors[edge_index(self.n, perm[i], perm[j])] = self.color(i, j);
            }
        }
        EdgeColoring { n: self.n, colors }
    }
}

/// First monochromatic triangle in lexicographic order.
pub fn monochromatic_triangle(c: &EdgeColoring) -> Option<[usize; 3]> {
    let n = c.n;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let x = c.color(i, j);
                if c.color(i, k) == x && c.color(j, k) == x {
                    return Some([i, j, k]);
                }
            }
        }
    }
    None
}

fn triangle_masks(n: usize) -> Vec<u64> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                out.push((1 << edge_index(n, i, j)) | (1 << edge_index(n, i, k)) | (1 << edge_index(n, j, k)));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamseyVerdict {
    pub n: usize,
    /// Colourings examined before stopping.
    pub checked: u64,
    /// A colouring without monochromatic triangle, if one was met.
    pub counterexample: Option<EdgeColoring>,
}

impl RamseyVerdict {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Number of colourings of `K_n`.
pub fn coloring_count(n: usize) -> Result<u64> {
    if !(1..=RAMSEY_MAX).contains(&n) {
        return Err(Error::Domain(alloc::format!("ramsey check needs 1 ≤ n ≤ {RAMSEY_MAX}")));
    }
    Ok(1u64 << (n * (n - 1) / 2))
}

/// Checks the colourings with bit patterns in `range`; callers split the
/// full range across workers and keep the first counterexample.
pub fn ramsey_range(n: usize, range: core::ops::Range<u64>) -> Result<RamseyVerdict> {
    let total = coloring_count(n)?;
    let masks = triangle_masks(n);
    let mut checked = 0;
    for bits in range.start..range.end.min(total) {
        checked += 1;
        if !masks.iter().any(|&m| bits & m == m || bits & m == 0) {
            return Ok(RamseyVerdict { n, checked, counterexample: Some(EdgeColoring::from_bits(n, bits)) });
        }
    }
    Ok(RamseyVerdict { n, checked, counterexample: None })
}

/// Whether every 2-colouring of `K_n` has a monochromatic triangle.
pub fn ramsey_check(n: usize) -> Result<RamseyVerdict> {
    ramsey_range(n, 0..coloring_count(n)?)
}

/// Colours edge `(i, j)` by which of `form` or its conjugate the
/// outward-pointing product `X_i X̄_j` realizes. Self-conjugate forms get
/// colour `false` throughout.
pub fn outward_coloring(rows: &[[Symbol; ROW]], form: &CountArray) -> Result<EdgeColoring> {
    let n = rows.len();
    if form.structure() != Structure::Generic {
        return domain("outward colourings use generic arrays");
    }
    let order = GENERIC_PRODUCTS.map(Symbol);
    let conj = form.conj();
    let mut colors = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut counts = [0u8; 7];
            for (x, y) in rows[i].iter().zip(&rows[j]) {
                let r = x.ratio(*y);
                let k = order.iter().position(|&s| s == r).ok_or_else(|| Error::Undefined(r.to_string()))?;
                counts[k] += 1;
            }
            let got = CountArray::new(Structure::Generic, &counts)?;
            if got == *form {
                colors.push(false);
            } else if got == conj {
                colors.push(true);
            } else {
                return Err(Error::Domain(alloc::format!("rows {i},{j} give {got}, not {form} or its conjugate")));
            }
        }
    }
    Ok(EdgeColoring { n, colors })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PigeonholeWitness<T> {
    pub pair: [T; 2],
    /// Indices into the input of every occurrence of `pair`.
    pub rows: Vec<usize>,
}

/// Among five items from `{[p, q], [q, p]}` one occurs at least three
/// times; those three rows then repeat the same pair in two columns, a 3×2
/// rank-one block.
pub fn pigeonhole_pair_check<T: Copy + PartialEq>(items: &[[T; 2]], allowed: [T; 2]) -> Result<PigeonholeWitness<T>> {
    if items.len() != 5 {
        return domain("the pair check takes exactly five rows");
    }
    let forms = [allowed, [allowed[1], allowed[0]]];
    let mut hits: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    for (k, it) in items.iter().enumerate() {
        let Some(f) = forms.iter().position(|f| f == it) else {
            return domain("item outside the two allowed orders");
        };
        hits[f].push(k);
    }
    let f = if hits[0].len() >= hits[1].len() { 0 } else { 1 };
    Ok(PigeonholeWitness { pair: forms[f], rows: core::mem::take(&mut hits[f]) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables() {
        let z5 = GroupMap::z5();
        let row = [Symbol::ONE, Symbol::A, Symbol([-1, 0]), Symbol([2, 0]), Symbol([-2, 0]), Symbol::ONE];
        assert_eq!(residue_map(&z5, &row).unwrap(), [0, 1, 4, 2, 3, 0]);
        let z7 = GroupMap::z7();
        let row = [[0, 0], [1, 0], [-1, 0], [0, 1], [0, -1], [1, -1]].map(Symbol);
        assert_eq!(residue_map(&z7, &row).unwrap(), [0, 1, 6, 5, 2, 3]);
        assert_eq!(z5.ratio_residue(Symbol::A, Symbol([-2, 0])), Err(Error::Undefined("a^3b^0".into())));
        assert!(z5.ratio_residue(Symbol([-1, 0]), Symbol([2, 0])).is_err());
    }

    #[test]
    fn consistency_and_conjugation() {
        for map in [GroupMap::z5(), GroupMap::z7()] {
            let m = map.modulus();
            for &s in map.symbols() {
                let r = map.residue(s).unwrap();
                let c = map.residue(s.conj()).unwrap();
                assert_eq!(c, if s == Symbol::ONE { 0 } else { m - r });
                for &t in map.symbols() {
                    if let Ok(p) = map.ratio_residue(s, t) {
                        assert_eq!(p, (r + m - map.residue(t).unwrap()) % m);
                    }
                }
            }
        }
    }

    #[test]
    fn names() {
        for s in GroupMap::z7().symbols().iter().chain(GroupMap::z5().symbols()) {
            assert_eq!(Symbol::parse(&s.to_string()), Some(*s), "{s}");
        }
        assert_eq!(Symbol([-1, 1]).to_string(), "bā");
        assert_eq!(Symbol::parse("bā"), Some(Symbol([-1, 1])));
        assert_eq!(Symbol::parse("ab_"), Some(Symbol([1, -1])));
    }

    #[test]
    fn inner_products() {
        let z5 = GroupMap::z5();
        let p = residue_inner_product(&z5, &[1, 2, 2, 3, 3, 4], &[0; 6]);
        assert_eq!((p.sum, p.sum_mod), (15, 0));
        let x = [1, 4, 0, 2, 3, 3];
        assert_eq!(residue_inner_product(&z5, &x, &x).multiset, [0; 6]);
    }

    #[test]
    fn permutations() {
        assert_eq!(distinct_permutations(&[1, 2, 2, 3, 3, 4]).len(), 180);
        assert_eq!(distinct_permutations(&[0, 1, 2, 3, 4, 5]).len(), 720);
        assert_eq!(distinct_permutations(&[0; 6]).len(), 1);
    }

    #[test]
    fn pigeonhole() {
        let w = pigeonhole_pair_check(&[['a', 'b'], ['a', 'b'], ['b', 'a'], ['a', 'b'], ['b', 'a']], ['a', 'b']).unwrap();
        assert_eq!(w.pair, ['a', 'b']);
        assert_eq!(w.rows, [0, 1, 3]);
        assert_eq!(pigeonhole_pair_check(&[['b', 'a']; 5], ['a', 'b']).unwrap().rows.len(), 5);
        assert!(pigeonhole_pair_check(&[['a', 'a']; 5], ['a', 'b']).is_err());
        assert!(pigeonhole_pair_check(&[['a', 'b']; 4], ['a', 'b']).is_err());
    }

    #[test]
    fn edges() {
        let mut k = 0;
        for i in 0..6 {
            for j in i + 1..6 {
                assert_eq!(edge_index(6, i, j), k);
                k += 1;
            }
        }
        assert_eq!(monochromatic_triangle(&EdgeColoring::from_bits(6, 0)), Some([0, 1, 2]));
    }
}
