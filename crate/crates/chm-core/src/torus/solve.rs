use alloc::vec::Vec;
use core::f64::consts::PI;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::laurent::LaurentPoly;
use super::plane::{angle_dist, PlanePoint};
use super::Structure;
use crate::error::{domain, Error, Result};
use crate::exactnum::Turn;
use crate::poly::{chebyshev_t, chebyshev_u, q, unit_circle_roots, CosRoot, Poly};

/// Whether a solution set lists every solution or only witnesses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Completeness {
    Complete,
    WitnessOnly,
}

/// Solutions on the unit circle (one variable) or torus (two variables).
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionSet {
    pub vars: usize,
    /// Roots of unity; the second turn is zero for one variable.
    pub exact: Vec<[Turn; 2]>,
    /// Each entry stands for the conjugate pair `e^{±iθ}` with `cos θ` given.
    pub algebraic: Vec<CosRoot>,
    /// Angles `(θ1, θ2)`.
    pub numeric: Vec<[f64; 2]>,
    pub completeness: Completeness,
}

impl SolutionSet {
    pub fn empty(vars: usize) -> SolutionSet {
        SolutionSet { vars, exact: Vec::new(), algebraic: Vec::new(), numeric: Vec::new(), completeness: Completeness::Complete }
    }

    pub fn is_empty(&self) -> bool {
        self.exact.is_empty() && self.algebraic.is_empty() && self.numeric.is_empty()
    }

    /// Number of points, counting each algebraic pair twice.
    pub fn len(&self) -> usize {
        self.exact.len() + 2 * self.algebraic.len() + self.numeric.len()
    }

    pub(crate) fn push_plane(&mut self, p: PlanePoint) {
        match p {
            PlanePoint::Exact(t) => self.exact.push(t),
            PlanePoint::Numeric(a) => self.numeric.push(a),
        }
    }

    /// Angles of every point, algebraic pairs expanded.
    pub fn angles(&self) -> Vec<[f64; 2]> {
        let mut out: Vec<[f64; 2]> = self.exact.iter().map(|t| [2.0 * PI * t[0].as_f64(), 2.0 * PI * t[1].as_f64()]).collect();
        for c in &self.algebraic {
            let th = libm::acos(c.cos());
            out.push([th, 0.0]);
            out.push([-th, 0.0]);
        }
        out.extend(self.numeric.iter().copied());
        out
    }

    /// Angles of a point that is not simple, if any.
    pub fn first_nonsimple(&self, s: Structure) -> Option<[f64; 2]> {
        let exact = self
            .exact
            .iter()
            .find(|t| !is_simple(s, &SolutionPoint::Exact(**t)))
            .map(|t| [2.0 * PI * t[0].as_f64(), 2.0 * PI * t[1].as_f64()]);
        let alg = || {
            self.algebraic
                .iter()
                .find(|c| !is_simple(s, &SolutionPoint::Algebraic((*c).clone())))
                .map(|c| [libm::acos(c.cos()), 0.0])
        };
        let num = || self.numeric.iter().find(|a| !is_simple(s, &SolutionPoint::Numeric(**a))).copied();
        exact.or_else(alg).or_else(num)
    }
}

/// A single solution, for [`is_simple`].
#[derive(Clone, Debug, PartialEq)]
pub enum SolutionPoint {
    Exact([Turn; 2]),
    Algebraic(CosRoot),
    Numeric([f64; 2]),
}

/// All unit-circle roots of a one-variable Laurent polynomial, exactly.
pub fn solve_unit_circle(p: &LaurentPoly) -> Result<SolutionSet> {
    if p.vars() != 1 {
        return domain("solve_unit_circle takes a one-variable polynomial");
    }
    if p.is_zero() {
        return Err(Error::IdenticallyZero);
    }
    let roots = unit_circle_roots(&p.to_poly()?)?;
    let mut out = SolutionSet::empty(1);
    for (d, _) in roots.cyclotomic {
        for k in 0..d {
            if k.gcd(&d) == 1 {
                out.exact.push([Turn::new(k as i64, d)?, Turn::ZERO]);
            }
        }
    }
    out.exact.sort();
    out.algebraic = roots.cosines;
    Ok(out)
}

/// Relations between `a` and `b` under which a two-variable solution counts
/// as simple.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimpleRelation {
    AEqB,
    AEqConjB,
    AEqNegB,
    AEqNegConjB,
    AEqBSquared,
    AEqNegBSquared,
    BEqASquared,
    BEqNegASquared,
    AMinusOne,
    BMinusOne,
    /// `a = 1`: the alphabet degenerates to two letters.
    AOne,
    /// `b = 1`, likewise.
    BOne,
}

impl SimpleRelation {
    pub const ALL: [SimpleRelation; 12] = [
        SimpleRelation::AEqB,
        SimpleRelation::AEqConjB,
        SimpleRelation::AEqNegB,
        SimpleRelation::AEqNegConjB,
        SimpleRelation::AEqBSquared,
        SimpleRelation::AEqNegBSquared,
        SimpleRelation::BEqASquared,
        SimpleRelation::BEqNegASquared,
        SimpleRelation::AMinusOne,
        SimpleRelation::BMinusOne,
        SimpleRelation::AOne,
        SimpleRelation::BOne,
    ];

    /// `(x, y, k, shift)`: the relation reads `x = k·y + shift` in turns,
    /// with `x, y` indices into `(a, b)`; `k = 0` fixes `x` alone.
    fn form(self) -> (usize, usize, i64, bool) {
        match self {
            SimpleRelation::AEqB => (0, 1, 1, false),
            SimpleRelation::AEqConjB => (0, 1, -1, false),
            SimpleRelation::AEqNegB => (0, 1, 1, true),
            SimpleRelation::AEqNegConjB => (0, 1, -1, true),
            SimpleRelation::AEqBSquared => (0, 1, 2, false),
            SimpleRelation::AEqNegBSquared => (0, 1, 2, true),
            SimpleRelation::BEqASquared => (1, 0, 2, false),
            SimpleRelation::BEqNegASquared => (1, 0, 2, true),
            SimpleRelation::AMinusOne => (0, 1, 0, true),
            SimpleRelation::BMinusOne => (1, 0, 0, true),
            SimpleRelation::AOne => (0, 1, 0, false),
            SimpleRelation::BOne => (1, 0, 0, false),
        }
    }

    pub fn holds(self, t: [Turn; 2]) -> bool {
        let (x, y, k, shift) = self.form();
        let rhs = t[y].times(k).add(if shift { Turn::HALF } else { Turn::ZERO });
        t[x] == rhs
    }

    /// Angular distance from the relation at angles `θ`.
    pub fn gap(self, th: [f64; 2]) -> f64 {
        let (x, y, k, shift) = self.form();
        angle_dist(th[x], k as f64 * th[y] + if shift { PI } else { 0.0 })
    }
}

/// Largest gap that still counts a numeric point as simple. Double roots
/// are only located to about the square root of machine precision.
pub const SIMPLE_TOL: f64 = 1e-6;

fn simple_turn(t: Turn) -> bool {
    matches!(t.den(), 1 | 2 | 3 | 4 | 6)
}

fn angle_is_simple(th: f64) -> bool {
    [0.0, 2.0, 3.0, 4.0, 6.0, 8.0, 9.0, 10.0].iter().any(|&k| angle_dist(th, PI * k / 6.0) < SIMPLE_TOL)
}

/// One variable: `a ∈ {±1, ±i, ±ω, ±ω²}`. Two variables: one of the
/// [`SimpleRelation`]s holds. Over `{1, −1, a}` the letter `a` is free, so
/// every point is simple there.
pub fn is_simple(structure: Structure, point: &SolutionPoint) -> bool {
    match (structure, point) {
        (Structure::Real1, _) => true,
        (Structure::Generic, SolutionPoint::Exact(t)) => SimpleRelation::ALL.iter().any(|r| r.holds(*t)),
        (Structure::Generic, SolutionPoint::Numeric(th)) => SimpleRelation::ALL.iter().any(|r| r.gap(*th) < SIMPLE_TOL),
        (Structure::Generic, SolutionPoint::Algebraic(_)) => false,
        (_, SolutionPoint::Exact(t)) => simple_turn(t[0]),
        // Algebraic cosines never belong to roots of unity, since those
        // were split off as cyclotomic factors.
        (_, SolutionPoint::Algebraic(_)) => false,
        (_, SolutionPoint::Numeric(th)) => angle_is_simple(th[0]),
    }
}

/// Real and imaginary parts of a one-variable polynomial at `a = e^{iθ}`,
/// written in `c = cos θ`; the second is divided by `sin θ`.
fn chebyshev_parts(p: &LaurentPoly) -> (Poly, Poly) {
    let (mut re, mut im) = (Poly::zero(), Poly::zero());
    for (e, c) in p.terms() {
        let k = e[0];
        re = re.add(&chebyshev_t(k.unsigned_abs() as usize).scale(&q(c)));
        if k != 0 {
            im = im.add(&chebyshev_u(k.unsigned_abs() as usize - 1).scale(&q(c * k.signum() as i64)));
        }
    }
    (re, im)
}

/// Re-checks every point of `set` in `p`: exactly for exact and algebraic
/// points, within `1e-9` for numeric ones.
pub fn verify(p: &LaurentPoly, set: &SolutionSet) -> Result<bool> {
    for t in &set.exact {
        if !p.eval_exact(t[0], t[1])?.is_zero() {
            return Ok(false);
        }
    }
    if !set.algebraic.is_empty() {
        if p.vars() != 1 {
            return domain("algebraic points need a one-variable polynomial");
        }
        let (re, im) = chebyshev_parts(p);
        for c in &set.algebraic {
            let inside = c.root.cmp_q(&q(-1)).is_gt() && c.root.cmp_q(&q(1)).is_lt();
            if !inside || c.root.sign_of(&re) != 0 || c.root.sign_of(&im) != 0 {
                return Ok(false);
            }
        }
    }
    Ok(set.numeric.iter().all(|t| p.eval_angles(t[0], t[1]).norm() <= 1e-9))
}

/// Integer content-free coefficients, for gcd computations.
pub(crate) fn poly_of(p: &LaurentPoly) -> Result<Poly> {
    Ok(Poly::from_ints(&p.to_poly()?))
}

pub(crate) fn is_constant(p: &Poly) -> bool {
    p.degree().map_or(true, |d| d == 0)
}

pub(crate) fn int_coeffs(p: &Poly) -> Vec<BigInt> {
    let c = p.primitive();
    if c.last().is_some_and(|x| x.is_negative()) {
        c.into_iter().map(|x| -x).collect()
    } else if c.iter().all(Zero::is_zero) {
        Vec::new()
    } else {
        c
    }
}
