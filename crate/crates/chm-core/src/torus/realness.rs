//! Closed-form realness criteria for short sums of unimodular numbers.
//!
//! Each [`Shape`] names a quantity built from unit complex numbers
//! `a, b` (and `c, d` for the sum equality), and [`realness_cases`] returns the
//! disjunction of relations that is claimed to be equivalent to the quantity
//! being real (or, for [`Shape::SumEquality`], implied by `a+b = c+d`).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::laurent::LaurentPoly;
use crate::error::{Error, Result};
use crate::exactnum::{common_order, CycSum, Turn};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    /// `a + b`
    Sum,
    /// `ab`
    Product,
    /// `a + b + ab`
    SumPlusProduct,
    /// `a + b + ab̄`
    SumPlusMixed,
    /// `a + b + āb̄`
    SumPlusConjProduct,
    /// `a + b = c + d`
    SumEquality,
}

impl Shape {
    pub const ALL: [Shape; 6] =
        [Shape::Sum, Shape::Product, Shape::SumPlusProduct, Shape::SumPlusMixed, Shape::SumPlusConjProduct, Shape::SumEquality];

    /// The quantity as a Laurent polynomial in `a, b`; `None` for the
    /// equality shape.
    pub fn poly(self) -> Option<LaurentPoly> {
        let extra = match self {
            Shape::Sum => None,
            Shape::Product => return Some(LaurentPoly::from_terms(2, [([1, 1], 1)])),
            Shape::SumPlusProduct => Some([1, 1]),
            Shape::SumPlusMixed => Some([1, -1]),
            Shape::SumPlusConjProduct => Some([-1, -1]),
            Shape::SumEquality => return None,
        };
        let mut terms = vec![([1, 0], 1), ([0, 1], 1)];
        terms.extend(extra.map(|e| (e, 1)));
        Some(LaurentPoly::from_terms(2, terms))
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Shape::Sum => "a+b",
            Shape::Product => "ab",
            Shape::SumPlusProduct => "a+b+ab",
            Shape::SumPlusMixed => "a+b+ab̄",
            Shape::SumPlusConjProduct => "a+b+āb̄",
            Shape::SumEquality => "a+b=c+d",
        })
    }
}

/// Recognizes a polynomial as one of the covered shapes.
pub fn shape_of(p: &LaurentPoly) -> Result<Shape> {
    Shape::ALL
        .into_iter()
        .find(|s| s.poly().as_ref() == Some(p))
        .ok_or_else(|| Error::Unsupported(alloc::format!("no closed-form realness rule for {p}")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    AConjB,
    ANegB,
    ANegConjB,
    AMinusOne,
    BMinusOne,
    AOne,
    BOne,
    AEqC,
    AEqD,
    /// `a = −b` and `c = −d`: both sides vanish.
    BothVanish,
}

impl Relation {
    pub fn holds(self, a: Turn, b: Turn, c: Turn, d: Turn) -> bool {
        let half = Turn::new(1, 2).expect("valid");
        let zero = Turn::new(0, 1).expect("valid");
        match self {
            Relation::AConjB => a == b.neg(),
            Relation::ANegB => a == b.add(half),
            Relation::ANegConjB => a == b.neg().add(half),
            Relation::AMinusOne => a == half,
            Relation::BMinusOne => b == half,
            Relation::AOne => a == zero,
            Relation::BOne => b == zero,
            Relation::AEqC => a == c,
            Relation::AEqD => a == d,
            Relation::BothVanish => a == b.add(half) && c == d.add(half),
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::AConjB => "a=b̄",
            Relation::ANegB => "a=-b",
            Relation::ANegConjB => "a=-b̄",
            Relation::AMinusOne => "a=-1",
            Relation::BMinusOne => "b=-1",
            Relation::AOne => "a=1",
            Relation::BOne => "b=1",
            Relation::AEqC => "a=c",
            Relation::AEqD => "a=d",
            Relation::BothVanish => "a=-b and c=-d",
        })
    }
}

/// The relations as usually stated. For [`Shape::SumEquality`] this is
/// `a = c` or `a = d`, which misses the case where both sides vanish; see
/// [`realness_cases_complete`].
pub fn realness_cases(shape: Shape) -> Vec<Relation> {
    use Relation::*;
    match shape {
        Shape::Sum => vec![AConjB, ANegB],
        Shape::Product => vec![AConjB, ANegConjB],
        Shape::SumPlusProduct => vec![AConjB, AMinusOne, BMinusOne],
        Shape::SumPlusMixed => vec![ANegB, AOne, BMinusOne],
        Shape::SumPlusConjProduct => vec![AConjB, AOne, BOne],
        Shape::SumEquality => vec![AEqC, AEqD],
    }
}

/// Like [`realness_cases`] with the vanishing case of the sum equality added.
pub fn realness_cases_complete(shape: Shape) -> Vec<Relation> {
    let mut r = realness_cases(shape);
    if shape == Shape::SumEquality {
        r.push(Relation::BothVanish);
    }
    r
}

/// Decides the shape's predicate exactly: realness, or `a+b = c+d`.
pub fn shape_holds(shape: Shape, a: Turn, b: Turn, c: Turn, d: Turn) -> Result<bool> {
    if shape == Shape::SumEquality {
        let n = common_order([a, b, c, d], 1)?;
        let e = |t: Turn| t.exponent_at(n) as i64;
        let v = CycSum::from_terms(n, &[(e(a), 1), (e(b), 1), (e(c), -1), (e(d), -1)])?;
        return Ok(v.is_zero());
    }
    let p = shape.poly().expect("polynomial shape");
    Ok(p.eval_exact(a, b)?.is_real())
}

/// True when the predicate and the disjunction agree at this point (for the
/// sum equality: when the predicate implies the disjunction).
pub fn clause_agrees(shape: Shape, relations: &[Relation], a: Turn, b: Turn, c: Turn, d: Turn) -> Result<bool> {
    let lhs = shape_holds(shape, a, b, c, d)?;
    let rhs = relations.iter().any(|r| r.holds(a, b, c, d));
    Ok(if shape == Shape::SumEquality { !lhs || rhs } else { lhs == rhs })
}
