//! Two small closed systems: the squared real-part elimination for pairs of
//! cosine equations, and the relations forced on a two-letter alphabet
//! `{1, a, b}` by 2×2 Hadamard blocks.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::exactnum::Turn;
use crate::poly::{factor_squarefree, q, q_frac, real_roots, Poly, RealAlgebraic};

/// A root `x_k ∈ [−1, 1]` of the elimination polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosineRoot {
    pub x: RealAlgebraic,
    /// Primitive minimal polynomial of `x_k`, constant term first.
    pub minimal: Vec<BigInt>,
    /// `x_j = −2x_k` and the derived `x_i` both lie in `[−1, 1]`.
    pub compatible: bool,
    /// Some cosine is `±1`, or two of them vanish.
    pub simple: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealPartSystem {
    /// `[a1 + (ak − 2aj)x − 2ai x²]² − ai²(1 − x²)(1 − 4x²)`, constant first.
    pub poly: Vec<BigInt>,
    pub roots: Vec<CosineRoot>,
}

impl RealPartSystem {
    /// Roots that survive the compatibility check and are not simple.
    pub fn nonsimple_common(&self) -> impl Iterator<Item = &CosineRoot> {
        self.roots.iter().filter(|r| r.compatible && !r.simple)
    }
}

/// Eliminates the square root from the system
/// `a1 + ak·x_k + aj·x_j + ai·x_i = 0`, `x_j + 2x_k = 0`, where
/// `x_i, x_j, x_k` are the cosines of `θ1, θ2, θ1 − θ2` in some order, so
/// `x_i = x_j x_k ± √((1 − x_j²)(1 − x_k²))`.
///
/// Substituting `x_j = −2x_k` and solving the first equation for `x_i`, the
/// squared relation between the three cosines becomes exactly the returned
/// polynomial, so every real root satisfies it for one sign choice. What
/// remains to check is that `x_j` and `x_i` are cosines at all.
pub fn real_part_system(a1: i64, ak: i64, aj: i64, ai: i64) -> RealPartSystem {
    let x = Poly::x();
    let lin = Poly::from_i64(&[a1, ak - 2 * aj]);
    let inner = lin.sub(&x.mul(&x).scale(&q(2 * ai)));
    let rhs = Poly::from_i64(&[1, 0, -1]).mul(&Poly::from_i64(&[1, 0, -4])).scale(&q(ai * ai));
    let p = inner.mul(&inner).sub(&rhs);
    let poly: Vec<BigInt> = p.coeffs().iter().map(|c| c.to_integer()).collect();
    if p.is_zero() {
        return RealPartSystem { poly, roots: Vec::new() };
    }
    let (factors, _) = factor_squarefree(&p.squarefree());
    let (lo, hi) = (q(-1), q(1));
    // `x_i = −(a1 + (ak − 2aj)x_k)/ai`; `|x_i| ≤ 1` is two linear signs.
    let up = Poly::from_i64(&[ai + a1, ak - 2 * aj]);
    let down = Poly::from_i64(&[ai - a1, -(ak - 2 * aj)]);
    let mut roots = Vec::new();
    for f in factors {
        for r in real_roots(&Poly::from_ints(&f)) {
            if r.cmp_q(&lo).is_lt() || r.cmp_q(&hi).is_gt() {
                continue;
            }
            let xj_ok = r.cmp_q(&q_frac(-1, 2)).is_ge() && r.cmp_q(&q_frac(1, 2)).is_le();
            let (su, sd) =
                if ai == 0 { (1, 1) } else { (r.sign_of(&up) * ai.signum() as i8, r.sign_of(&down) * ai.signum() as i8) };
            let compatible = xj_ok && su >= 0 && sd >= 0;
            let unit_k = r.cmp_q(&lo).is_eq() || r.cmp_q(&hi).is_eq();
            let unit_j = r.cmp_q(&q_frac(-1, 2)).is_eq() || r.cmp_q(&q_frac(1, 2)).is_eq();
            let unit_i = ai != 0 && (su == 0 || sd == 0);
            let zero_k = r.cmp_q(&q(0)).is_eq();
            let zero_i = ai != 0 && r.sign_of(&lin) == 0;
            // x_k = 0 forces x_j = 0, so two cosines vanish.
            let simple = unit_k || unit_j || unit_i || zero_k || (zero_i && zero_k);
            roots.push(CosineRoot { x: r, minimal: f.clone(), compatible, simple });
        }
    }
    roots.sort_by(|a, b| a.x.approx().total_cmp(&b.x.approx()));
    RealPartSystem { poly, roots }
}

/// A relation `t_x = k·t_y + shift` between the turns of `a` and `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TurnRelation {
    pub name: &'static str,
    /// Index of the left variable: 0 for `a`, 1 for `b`.
    pub left: usize,
    pub k: i64,
    pub shift: Turn,
}

impl TurnRelation {
    pub fn holds(&self, t: [Turn; 2]) -> bool {
        t[self.left] == t[1 - self.left].times(self.k).add(self.shift)
    }
}

/// Solutions of two relations taken together, with `1, a, b` distinct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Combination {
    pub relations: (usize, usize),
    pub pairs: Vec<[Turn; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H2Relations {
    pub relations: [TurnRelation; 3],
    pub combinations: Vec<Combination>,
    /// Outcome when a 2×2 Hadamard block has a repeated row or column letter.
    pub degenerate: &'static str,
}

/// The three relations a 2×2 Hadamard block over `{1, a, b}` can impose,
/// `b = −ā`, `b = −a²`, `a = −b²`, and the pairs solving any two of them.
pub fn h2_alphabet_relations() -> H2Relations {
    let half = Turn::HALF;
    let relations = [
        TurnRelation { name: "b=-ā", left: 1, k: -1, shift: half },
        TurnRelation { name: "b=-a²", left: 1, k: 2, shift: half },
        TurnRelation { name: "a=-b²", left: 0, k: 2, shift: half },
    ];
    // Each combination reduces to `3·t = c` with `c` a multiple of 1/2, so
    // every solution lies on the sixth roots of unity; 12ths cover them.
    let grid: Vec<Turn> = (0..12).map(|k| Turn::new(k, 12).expect("valid")).collect();
    let mut combinations = Vec::new();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let mut pairs = Vec::new();
        for &ta in &grid {
            for &tb in &grid {
                let t = [ta, tb];
                if ta != Turn::ZERO && tb != Turn::ZERO && ta != tb && relations[i].holds(t) && relations[j].holds(t) {
                    pairs.push(t);
                }
            }
        }
        combinations.push(Combination { relations: (i, j), pairs });
    }
    H2Relations { relations, combinations, degenerate: "a=-b or -1∈{a,b}" }
}

/// `±1, ±ω, ±ω²` names for sixth roots of unity; other turns print as
/// `e(p/q)`.
pub fn sixth_root_name(t: Turn) -> String {
    let s = match (t.num(), t.den()) {
        (0, 1) => "1",
        (1, 2) => "-1",
        (1, 3) => "ω",
        (2, 3) => "ω²",
        (1, 6) => "-ω²",
        (5, 6) => "-ω",
        _ => return alloc::format!("{t}"),
    };
    String::from(s)
}

/// The unordered letter pair `{a, b}` as names.
pub fn pair_names(t: [Turn; 2]) -> Vec<String> {
    let mut v = vec![sixth_root_name(t[0]), sixth_root_name(t[1])];
    v.sort();
    v
}
