//! Count arrays of inner products and the unit-circle equations they induce.
//!
//! Two rows over a three-letter alphabet have an inner product that is a sum
//! of six formal products `x·ȳ`. Counting how often each product occurs gives
//! a [`CountArray`]; orthogonality turns it into a Laurent polynomial
//! equation in the alphabet's free unimodular parameters, whose unit-circle
//! solutions are then classified as simple or not.

mod classify;
mod cosine;
mod laurent;
pub mod plane;
pub mod realness;
mod solve;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{domain, Error, Result};

pub use classify::{
    classify_all, classify_array, common_solutions, CaseLabel, Classification, CommonVerdict, Tag, Witness, WitnessSource,
};
pub use cosine::{
    h2_alphabet_relations, pair_names, real_part_system, sixth_root_name, Combination, CosineRoot, H2Relations, RealPartSystem,
    TurnRelation,
};
pub use laurent::{monomial_name, LaurentPoly};
pub use solve::{is_simple, solve_unit_circle, verify, Completeness, SimpleRelation, SolutionPoint, SolutionSet, SIMPLE_TOL};

/// Every count array sums to the row length.
pub const ROW_LEN: u8 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Structure {
    /// Alphabet `{1, a, ā}`.
    Conj,
    /// Alphabet `{1, a, −ā}`.
    NegConj,
    /// Alphabet `{1, a, b}`.
    Generic,
    /// Alphabet `{1, −1, a}`.
    Real1,
}

impl Structure {
    pub const ALL: [Structure; 4] = [Structure::Conj, Structure::NegConj, Structure::Generic, Structure::Real1];

    pub fn arity(self) -> usize {
        self.products().len()
    }

    /// Number of free unimodular parameters.
    pub fn vars(self) -> usize {
        if self == Structure::Generic {
            2
        } else {
            1
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Structure::Conj => "CONJ",
            Structure::NegConj => "NEGCONJ",
            Structure::Generic => "GENERIC",
            Structure::Real1 => "REAL1",
        }
    }

    /// The distinct values of `x·ȳ`, in count-array order.
    pub fn products(self) -> &'static [&'static str] {
        match self {
            Structure::Conj => &["1", "a", "ā", "a²", "ā²"],
            Structure::NegConj => &["1", "a", "-a", "ā", "-ā", "-a²", "-ā²"],
            Structure::Generic => &["1", "a", "ā", "b", "b̄", "ab̄", "bā"],
            Structure::Real1 => &["1", "-1", "a", "-a", "ā", "-ā"],
        }
    }

    pub fn parse(s: &str) -> Result<Structure> {
        Structure::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Domain(alloc::format!("unknown structure {s}; expected conj, negconj, generic or real1")))
    }

    /// Index permutation induced by conjugating every product.
    fn conj_perm(self) -> &'static [usize] {
        match self {
            Structure::Conj => &[0, 2, 1, 4, 3],
            Structure::NegConj => &[0, 3, 4, 1, 2, 6, 5],
            Structure::Generic => &[0, 2, 1, 4, 3, 6, 5],
            Structure::Real1 => &[0, 1, 4, 5, 2, 3],
        }
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CountArray {
    structure: Structure,
    n: Vec<u8>,
}

impl CountArray {
    pub fn new(structure: Structure, n: &[u8]) -> Result<CountArray> {
        if n.len() != structure.arity() {
            return Err(Error::Domain(alloc::format!("{structure} arrays have {} entries, got {}", structure.arity(), n.len())));
        }
        if n.iter().map(|&x| x as u32).sum::<u32>() != ROW_LEN as u32 {
            return domain("count array entries must sum to 6");
        }
        Ok(CountArray { structure, n: n.to_vec() })
    }

    pub fn structure(&self) -> Structure {
        self.structure
    }

    pub fn counts(&self) -> &[u8] {
        &self.n
    }

    /// One-based accessor matching the usual `n1, n2, …` names.
    pub fn n(&self, i: usize) -> i64 {
        self.n[i - 1] as i64
    }

    /// The array of the conjugated inner product.
    pub fn conj(&self) -> CountArray {
        let n = self.structure.conj_perm().iter().map(|&i| self.n[i]).collect();
        CountArray { structure: self.structure, n }
    }

    /// Lexicographic minimum of the array and its conjugate.
    pub fn canonical(&self) -> CountArray {
        let c = self.conj();
        if c.n < self.n {
            c
        } else {
            self.clone()
        }
    }

    /// Some entry is 3 or more, which the rank-one argument rules out.
    pub fn rank1_excluded(&self) -> bool {
        self.n.iter().any(|&x| x >= 3)
    }

    /// `n3 − n4`, defined for [`Structure::Real1`].
    pub fn n0(&self) -> Option<i64> {
        (self.structure == Structure::Real1).then(|| self.n(3) - self.n(4))
    }

    /// `max(n3, n5)`, defined for [`Structure::NegConj`].
    pub fn n8(&self) -> Option<i64> {
        (self.structure == Structure::NegConj).then(|| self.n(3).max(self.n(5)))
    }
}

impl fmt::Display for CountArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.n.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// All count arrays of a structure, split by the entry bound.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ArrayEnumeration {
    /// Every entry at most 2, in lexicographic order.
    pub bounded: Vec<CountArray>,
    /// Some entry at least 3.
    pub rank1_excluded: Vec<CountArray>,
}

pub fn enumerate_count_arrays(structure: Structure) -> ArrayEnumeration {
    fn rec(k: usize, left: u8, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() + 1 == k {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in 0..=left {
            cur.push(x);
            rec(k, left - x, cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    rec(structure.arity(), ROW_LEN, &mut Vec::new(), &mut all);
    let mut out = ArrayEnumeration::default();
    for n in all {
        let a = CountArray { structure, n };
        if a.rank1_excluded() {
            out.rank1_excluded.push(a);
        } else {
            out.bounded.push(a);
        }
    }
    out
}

const GENERIC_EXPONENTS: [[i32; 2]; 7] = [[0, 0], [1, 0], [-1, 0], [0, 1], [0, -1], [1, -1], [-1, 1]];

/// The inner product as a Laurent polynomial; orthogonality sets it to 0.
pub fn original_equation(array: &CountArray) -> LaurentPoly {
    let n = |i: usize| array.n(i);
    match array.structure {
        Structure::Conj => LaurentPoly::univariate(&[(0, n(1)), (1, n(2)), (-1, n(3)), (2, n(4)), (-2, n(5))]),
        Structure::NegConj => LaurentPoly::univariate(&[(0, n(1)), (1, n(2) - n(3)), (-1, n(4) - n(5)), (2, -n(6)), (-2, -n(7))]),
        Structure::Generic => LaurentPoly::from_terms(2, GENERIC_EXPONENTS.iter().zip(1..).map(|(e, i)| (*e, n(i)))),
        Structure::Real1 => LaurentPoly::univariate(&[(0, n(1) - n(2)), (1, n(3) - n(4)), (-1, n(5) - n(6))]),
    }
}

/// What remains of the inner product after discarding its automatically real
/// part: the constant and every matched conjugate pair `k(x + x̄)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pending {
    pub terms: LaurentPoly,
    /// Sum of the absolute coefficients.
    pub amount: u32,
}

fn strip_pairs(p: &LaurentPoly) -> LaurentPoly {
    let mut out = LaurentPoly::zero(p.vars());
    for (e, c) in p.terms() {
        if e == [0, 0] {
            continue;
        }
        let partner = p.coeff([-e[0], -e[1]]);
        // Only same-sign pairs form a real multiple of x + x̄.
        let shared = if (c > 0) == (partner > 0) { c.signum() * c.abs().min(partner.abs()) } else { 0 };
        out = out.add(&LaurentPoly::from_terms(p.vars(), [(e, c - shared)]));
    }
    out
}

/// Pending terms of the original equation. For [`Structure::NegConj`] the
/// equation is first rewritten with `n8 = max(n3, n5)` into the modified
/// terms `(n2+n8−n3)a + (n4+n8−n5)ā + n7a² + n6ā²`, which are real exactly
/// when the original non-constant part is.
pub fn pending_terms(array: &CountArray) -> Pending {
    let n = |i: usize| array.n(i);
    let base = match array.structure {
        Structure::NegConj => {
            let n8 = array.n8().expect("negconj");
            LaurentPoly::univariate(&[(1, n(2) + n8 - n(3)), (-1, n(4) + n8 - n(5)), (2, n(7)), (-2, n(6))])
        }
        Structure::Real1 => {
            let (p, q) = (n(3) - n(4), n(5) - n(6));
            LaurentPoly::univariate(&[(1, p - q)])
        }
        _ => original_equation(array),
    };
    let terms = if array.structure == Structure::Real1 { base } else { strip_pairs(&base) };
    let amount = terms.terms().map(|(_, c)| c.unsigned_abs() as u32).sum();
    Pending { terms, amount }
}

/// The four arrays whose originals admit non-simple solutions over
/// `{1, a, ā}`, numbered 1 to 4; conjugates carry a prime.
pub const EQ_ARRAYS: [[u8; 5]; 4] = [[0, 1, 1, 2, 2], [0, 2, 2, 1, 1], [1, 2, 1, 2, 0], [1, 2, 1, 0, 2]];

/// `(n1, n2 − n3, n6)` of the self-conjugate originals
/// `n1 + d(a + ā) − m(a² + ā²)` with non-simple solutions over `{1, a, −ā}`.
pub const APPC_FORMS: [(u8, i8, u8); 6] = [(0, 1, 2), (0, -1, 2), (0, 2, 1), (0, -2, 1), (2, 1, 1), (2, -1, 1)];

pub const N1_ARRAYS: [[u8; 7]; 6] = [
    [0, 1, 1, 2, 2, 0, 0],
    [0, 1, 1, 0, 0, 2, 2],
    [0, 2, 2, 1, 1, 0, 0],
    [0, 0, 0, 1, 1, 2, 2],
    [0, 2, 2, 0, 0, 1, 1],
    [0, 0, 0, 2, 2, 1, 1],
];

pub const N2_ARRAYS: [[u8; 7]; 6] = [
    [2, 2, 0, 1, 0, 1, 0],
    [2, 2, 0, 0, 1, 0, 1],
    [2, 1, 0, 2, 0, 0, 1],
    [2, 0, 1, 2, 0, 1, 0],
    [2, 1, 0, 0, 1, 2, 0],
    [2, 0, 1, 1, 0, 2, 0],
];

pub const N3_ARRAYS: [[u8; 7]; 6] = [
    [1, 1, 0, 2, 0, 2, 0],
    [1, 1, 0, 0, 2, 0, 2],
    [1, 2, 0, 1, 0, 0, 2],
    [1, 0, 2, 1, 0, 2, 0],
    [1, 2, 0, 0, 2, 1, 0],
    [1, 0, 2, 2, 0, 1, 0],
];

pub const N4_ARRAYS: [[u8; 7]; 12] = [
    [1, 1, 1, 2, 0, 1, 0],
    [1, 1, 1, 0, 2, 1, 0],
    [1, 1, 1, 1, 0, 2, 0],
    [1, 1, 1, 0, 1, 2, 0],
    [1, 2, 0, 1, 1, 1, 0],
    [1, 0, 2, 1, 1, 1, 0],
    [1, 1, 0, 1, 1, 2, 0],
    [1, 0, 1, 1, 1, 2, 0],
    [1, 2, 0, 1, 0, 1, 1],
    [1, 0, 2, 1, 0, 1, 1],
    [1, 1, 0, 2, 0, 1, 1],
    [1, 0, 1, 2, 0, 1, 1],
];

pub const N5_ARRAYS: [[u8; 7]; 1] = [[0, 1, 1, 1, 1, 1, 1]];

/// The generic reference lists in group order.
pub fn n_lists() -> [&'static [[u8; 7]]; 5] {
    [&N1_ARRAYS, &N2_ARRAYS, &N3_ARRAYS, &N4_ARRAYS, &N5_ARRAYS]
}

pub(crate) fn describe(array: &CountArray) -> String {
    alloc::format!("{} {}", array.structure, array)
}
