//! Roots of unity and their integer combinations.
//!
//! A [`UnitValue`] is either an exact root of unity `e(p/q) = exp(2πi p/q)`,
//! stored as a reduced turn, or a floating point point on the unit circle.
//! A [`CycSum`] is an integer combination of `N`-th roots of unity kept in the
//! power basis of `ζ_N` reduced modulo the cyclotomic polynomial `Φ_N`, so a
//! sum vanishes exactly when its coefficient vector does.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use num_complex::Complex64;
use num_integer::Integer;

use crate::error::{domain, Error, Result};

/// Tolerance for every approximate predicate.
pub const TOL: f64 = 1e-9;
/// Order used when no value forces a larger one; hosts ±1, ±i, ±ω, ±ω².
pub const DEFAULT_ORDER: u64 = 24;
/// Largest cyclotomic order accepted by exact sums.
pub const MAX_ORDER: u64 = 5040;

/// A reduced fraction of a full turn, `0 ≤ num < den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Turn {
    num: u64,
    den: u64,
}

impl Turn {
    pub const ZERO: Turn = Turn { num: 0, den: 1 };
    pub const HALF: Turn = Turn { num: 1, den: 2 };

    pub fn new(p: i64, q: u64) -> Result<Turn> {
        if q == 0 {
            return domain("root of unity with denominator 0");
        }
        let qi = q as i128;
        let r = (p as i128).rem_euclid(qi);
        let g = (r as u64).gcd(&q);
        Ok(Turn { num: r as u64 / g, den: q / g })
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    // Inherent rather than `ops` impls so callers need no trait imports.
    #[allow(clippy::should_implement_trait)]
    pub fn add(self, o: Turn) -> Turn {
        let l = self.den.lcm(&o.den);
        let n = (self.num as u128 * (l / self.den) as u128 + o.num as u128 * (l / o.den) as u128) % l as u128;
        let g = (n as u64).gcd(&l);
        Turn { num: n as u64 / g, den: l / g }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Turn {
        if self.num == 0 {
            self
        } else {
            Turn { num: self.den - self.num, den: self.den }
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(self, o: Turn) -> Turn {
        self.add(o.neg())
    }

    pub fn times(self, k: i64) -> Turn {
        let n = (self.num as i128 * k as i128).rem_euclid(self.den as i128);
        Turn::new(n as i64, self.den).expect("nonzero denominator")
    }

    /// Numerator over the given multiple of the denominator.
    pub fn exponent_at(self, order: u64) -> u64 {
        debug_assert_eq!(order % self.den, 0);
        self.num * (order / self.den)
    }

    pub fn as_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn to_complex(self) -> Complex64 {
        // Exact values for the quarter and third turns avoid needless rounding.
        match (self.num, self.den) {
            (0, 1) => Complex64::new(1.0, 0.0),
            (1, 2) => Complex64::new(-1.0, 0.0),
            (1, 4) => Complex64::new(0.0, 1.0),
            (3, 4) => Complex64::new(0.0, -1.0),
            _ => {
                let t = 2.0 * core::f64::consts::PI * self.as_f64();
                Complex64::new(libm::cos(t), libm::sin(t))
            }
        }
    }
}

impl PartialOrd for Turn {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Turn {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128)).then(self.den.cmp(&other.den))
    }
}

impl fmt::Display for Turn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e({}/{})", self.num, self.den)
    }
}

/// A unimodular complex number, exact or approximate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum UnitValue {
    Root(Turn),
    Float(Complex64),
}

impl UnitValue {
    pub const ONE: UnitValue = UnitValue::Root(Turn::ZERO);
    pub const MINUS_ONE: UnitValue = UnitValue::Root(Turn::HALF);

    pub fn float(re: f64, im: f64) -> Result<UnitValue> {
        if (re * re + im * im - 1.0).abs() > TOL || !re.is_finite() || !im.is_finite() {
            return Err(Error::NotUnimodular);
        }
        Ok(UnitValue::Float(Complex64::new(re, im)))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, UnitValue::Root(_))
    }

    pub fn turn(&self) -> Option<Turn> {
        match self {
            UnitValue::Root(t) => Some(*t),
            UnitValue::Float(_) => None,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            UnitValue::Root(t) => t.to_complex(),
            UnitValue::Float(z) => *z,
        }
    }

    pub fn mul(&self, o: &UnitValue) -> UnitValue {
        match (self, o) {
            (UnitValue::Root(a), UnitValue::Root(b)) => UnitValue::Root(a.add(*b)),
            _ => UnitValue::Float(self.to_complex() * o.to_complex()),
        }
    }

    pub fn conj(&self) -> UnitValue {
        match self {
            UnitValue::Root(t) => UnitValue::Root(t.neg()),
            UnitValue::Float(z) => UnitValue::Float(z.conj()),
        }
    }

    pub fn neg(&self) -> UnitValue {
        self.mul(&UnitValue::MINUS_ONE)
    }

    pub fn pow(&self, k: i64) -> UnitValue {
        match self {
            UnitValue::Root(t) => UnitValue::Root(t.times(k)),
            UnitValue::Float(z) => {
                let arg = libm::atan2(z.im, z.re) * k as f64;
                UnitValue::Float(Complex64::new(libm::cos(arg), libm::sin(arg)))
            }
        }
    }

    /// Exact equality for roots, tolerance comparison otherwise.
    pub fn approx_eq(&self, o: &UnitValue) -> bool {
        match (self, o) {
            (UnitValue::Root(a), UnitValue::Root(b)) => a == b,
            _ => (self.to_complex() - o.to_complex()).norm() <= TOL,
        }
    }
}

impl fmt::Display for UnitValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnitValue::Root(t) => t.fmt(f),
            UnitValue::Float(z) => write!(f, "f({},{})", z.re, z.im),
        }
    }
}

/// `e(p/q)`.
pub fn root_of_unity(p: i64, q: u64) -> Result<UnitValue> {
    Turn::new(p, q).map(UnitValue::Root)
}

pub fn mul(x: &UnitValue, y: &UnitValue) -> UnitValue {
    x.mul(y)
}

pub fn conj(x: &UnitValue) -> UnitValue {
    x.conj()
}

pub fn euler_phi(n: u64) -> u64 {
    let mut m = n;
    let mut r = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            r -= r / p;
        }
        p += 1;
    }
    if m > 1 {
        r -= r / m;
    }
    r
}

fn mobius(n: u64) -> i32 {
    let mut m = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// Coefficients of `Φ_n`, constant term first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n >= 1);
    let divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    let mut p: Vec<i64> = vec![1];
    // Multiply all (x^d - 1) factors with μ(n/d) = 1 before dividing by the
    // others so every division is exact.
    for &d in &divisors {
        if mobius(n / d) == 1 {
            let d = d as usize;
            let mut q = vec![0i64; p.len() + d];
            for (i, &c) in p.iter().enumerate() {
                q[i] -= c;
                q[i + d] += c;
            }
            p = q;
        }
    }
    for &d in &divisors {
        if mobius(n / d) == -1 {
            // Divide by x^d - 1: q[i] = q[i - d] + ... from the top down.
            let d = d as usize;
            let deg = p.len() - 1;
            let mut q = vec![0i64; deg - d + 1];
            let mut r = p.clone();
            for i in (d..=deg).rev() {
                let c = r[i];
                q[i - d] = c;
                r[i] -= c;
                r[i - d] += c;
            }
            debug_assert!(r.iter().all(|&c| c == 0));
            p = q;
        }
    }
    p
}

/// The ring `Z[x]/Φ_N` with `Φ_N` cached for repeated reductions.
#[derive(Clone, Debug)]
pub struct CycRing {
    order: u64,
    phi: Vec<i64>,
}

impl CycRing {
    pub fn new(order: u64) -> Result<CycRing> {
        if order == 0 {
            return domain("cyclotomic order 0");
        }
        if order > MAX_ORDER {
            return Err(Error::OrderOverflow(order));
        }
        Ok(CycRing { order, phi: cyclotomic_polynomial(order) })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.phi.len() - 1
    }

    /// Reduce a coefficient vector indexed by exponent modulo `Φ_N`.
    pub fn reduce(&self, mut v: Vec<i64>) -> Vec<i64> {
        let d = self.dim();
        for i in (d..v.len()).rev() {
            let c = v[i];
            if c != 0 {
                for (j, &p) in self.phi.iter().enumerate() {
                    v[i - d + j] -= c * p;
                }
            }
        }
        v.truncate(d);
        v.resize(d, 0);
        v
    }

    /// The reduced vector of `Σ c·ζ^k` over `(k, c)` pairs, exponents mod N.
    pub fn element(&self, terms: &[(i64, i64)]) -> CycSum {
        let n = self.order as usize;
        let mut v = vec![0i64; n.max(1)];
        for &(k, c) in terms {
            v[k.rem_euclid(self.order as i64) as usize] += c;
        }
        CycSum { order: self.order, coeffs: self.reduce(v) }
    }

    pub fn conj(&self, x: &CycSum) -> CycSum {
        debug_assert_eq!(x.order, self.order);
        let terms: Vec<(i64, i64)> =
            x.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, &c)| (-(k as i64), c)).collect();
        self.element(&terms)
    }

    pub fn mul(&self, x: &CycSum, y: &CycSum) -> CycSum {
        let mut v = vec![0i64; x.coeffs.len() + y.coeffs.len()];
        for (i, &a) in x.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        CycSum { order: self.order, coeffs: self.reduce(v) }
    }
}

/// An element of `Z[ζ_N]` in the reduced power basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycSum {
    order: u64,
    coeffs: Vec<i64>,
}

impl CycSum {
    pub fn zero(order: u64) -> Result<CycSum> {
        let ring = CycRing::new(order)?;
        Ok(CycSum { order, coeffs: vec![0; ring.dim()] })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// `Σ c_k ζ_N^k` for a coefficient list indexed by exponent.
    pub fn from_terms(order: u64, terms: &[(i64, i64)]) -> Result<CycSum> {
        Ok(CycRing::new(order)?.element(terms))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn conj(&self) -> CycSum {
        CycRing::new(self.order).expect("order already validated").conj(self)
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// Re-express in a multiple of the current order.
    pub fn lift(&self, order: u64) -> Result<CycSum> {
        if order % self.order != 0 {
            return domain("lift target is not a multiple of the order");
        }
        let m = (order / self.order) as i64;
        let terms: Vec<(i64, i64)> = self.coeffs.iter().enumerate().map(|(k, &c)| (k as i64 * m, c)).collect();
        CycSum::from_terms(order, &terms)
    }

    fn common(&self, o: &CycSum) -> Result<(CycSum, CycSum)> {
        let l = self.order.lcm(&o.order);
        Ok((self.lift(l)?, o.lift(l)?))
    }

    pub fn add(&self, o: &CycSum) -> Result<CycSum> {
        let (a, b) = self.common(o)?;
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        Ok(CycSum { order: a.order, coeffs })
    }

    pub fn neg(&self) -> CycSum {
        CycSum { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, o: &CycSum) -> Result<CycSum> {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: i64) -> CycSum {
        CycSum { order: self.order, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn mul(&self, o: &CycSum) -> Result<CycSum> {
        let (a, b) = self.common(o)?;
        Ok(CycRing::new(a.order)?.mul(&a, &b))
    }

    pub fn to_complex(&self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                let t = 2.0 * core::f64::consts::PI * k as f64 / self.order as f64;
                acc += Complex64::new(libm::cos(t), libm::sin(t)) * c as f64;
            }
        }
        acc
    }
}

/// Least common order of a set of turns, starting from `hint`.
pub fn common_order(turns: impl IntoIterator<Item = Turn>, hint: u64) -> Result<u64> {
    let mut n = hint.max(1);
    for t in turns {
        n = n.lcm(&t.den());
        if n > MAX_ORDER {
            return Err(Error::OrderOverflow(n));
        }
    }
    Ok(n)
}

/// Exact sum of roots of unity at the least order compatible with `order_hint`.
pub fn sum(values: &[UnitValue], order_hint: u64) -> Result<CycSum> {
    let mut turns = Vec::with_capacity(values.len());
    for v in values {
        turns.push(v.turn().ok_or(Error::NeedsExact)?);
    }
    sum_turns(&turns, order_hint)
}

pub fn sum_turns(turns: &[Turn], order_hint: u64) -> Result<CycSum> {
    let n = common_order(turns.iter().copied(), order_hint)?;
    let terms: Vec<(i64, i64)> = turns.iter().map(|t| (t.exponent_at(n) as i64, 1)).collect();
    CycSum::from_terms(n, &terms)
}

pub fn is_zero(x: &CycSum) -> bool {
    x.is_zero()
}

pub fn is_real(x: &CycSum) -> bool {
    x.is_real()
}

/// A sum that is exact when every input is exact.
#[derive(Clone, Debug, PartialEq)]
pub enum SumValue {
    Exact(CycSum),
    Float(Complex64),
}

impl SumValue {
    /// Exact when possible; mixed or float inputs fall back to floats.
    pub fn of(values: &[UnitValue]) -> Result<SumValue> {
        if values.iter().all(UnitValue::is_exact) {
            Ok(SumValue::Exact(sum(values, 1)?))
        } else {
            Ok(SumValue::Float(values.iter().map(UnitValue::to_complex).sum()))
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            SumValue::Exact(c) => c.is_zero(),
            SumValue::Float(z) => z.norm() < TOL,
        }
    }

    pub fn is_real(&self) -> bool {
        match self {
            SumValue::Exact(c) => c.is_real(),
            SumValue::Float(z) => z.im.abs() < TOL,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            SumValue::Exact(c) => c.to_complex(),
            SumValue::Float(z) => *z,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: u64) -> UnitValue {
        root_of_unity(p, q).unwrap()
    }

    #[test]
    fn canonical_turns() {
        assert_eq!(r(2, 6), r(1, 3));
        assert_eq!(r(-1, 4), r(3, 4));
        assert_eq!(r(7, 7), UnitValue::ONE);
        assert!(root_of_unity(1, 0).is_err());
        let w = r(1, 3);
        assert_eq!(w.mul(&w).mul(&w), UnitValue::ONE);
        assert_eq!(r(1, 4).to_complex(), Complex64::new(0.0, 1.0));
    }

    #[test]
    fn multiplication_and_conjugation() {
        assert_eq!(mul(&r(1, 3), &r(2, 3)), UnitValue::ONE);
        assert_eq!(mul(&r(1, 4), &r(1, 4)), UnitValue::MINUS_ONE);
        assert_eq!(mul(&r(1, 5), &r(1, 7)), r(12, 35));
        assert_eq!(conj(&r(1, 3)), r(2, 3));
        assert_eq!(conj(&UnitValue::ONE), UnitValue::ONE);
        assert_eq!(conj(&r(1, 5)), r(4, 5));
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(24), vec![1, 0, 0, 0, -1, 0, 0, 0, 1]);
        // Φ_105 is the first with a coefficient of absolute value 2.
        let p = cyclotomic_polynomial(105);
        assert_eq!(p.len() as u64 - 1, euler_phi(105));
        assert!(p.contains(&-2));
        for n in [2520u64, 5040] {
            assert_eq!(cyclotomic_polynomial(n).len() as u64 - 1, euler_phi(n));
        }
    }

    #[test]
    fn vanishing_sums() {
        let w = r(1, 3);
        assert!(sum(&[UnitValue::ONE, w, w.conj()], 1).unwrap().is_zero());
        let i = r(1, 4);
        let m = UnitValue::MINUS_ONE;
        assert!(sum(&[UnitValue::ONE, m, i, i.conj(), UnitValue::ONE, m], 1).unwrap().is_zero());
        assert!(!sum(&[UnitValue::ONE, UnitValue::ONE], 1).unwrap().is_zero());
        let two = CycSum::from_terms(3, &[(0, 2), (1, 2), (2, 2)]).unwrap();
        assert!(two.is_zero());
        // Twelfth roots summing to zero only through Φ_12.
        let s: Vec<UnitValue> = (0..12).map(|k| r(k, 12)).collect();
        assert!(sum(&s, 1).unwrap().is_zero());
    }

    #[test]
    fn realness() {
        let a = r(1, 5);
        assert!(sum(&[a, a.conj()], 1).unwrap().is_real());
        assert!(!sum(&[a, a.mul(&a)], 1).unwrap().is_real());
        let i = r(1, 4);
        assert!(!sum(&[i, i], 1).unwrap().is_real());
        assert!(sum(&[r(1, 4), r(3, 4), r(1, 2)], 1).unwrap().is_real());
    }

    #[test]
    fn default_and_maximal_order() {
        let s = sum(&[UnitValue::ONE], DEFAULT_ORDER).unwrap();
        assert_eq!(s.order(), 24);
        assert_eq!(s.coeffs().len(), 8);
        let big = [r(1, 71), r(1, 73)];
        assert!(matches!(sum(&big, 1), Err(Error::OrderOverflow(_))));
        assert!(sum(&[r(1, 5040)], 1).is_ok());
    }

    #[test]
    fn ring_operations() {
        let a = sum(&[r(1, 5), r(2, 5)], 1).unwrap();
        let b = sum(&[r(1, 3)], 1).unwrap();
        let p = a.mul(&b).unwrap();
        let z = a.to_complex() * b.to_complex();
        assert!((p.to_complex() - z).norm() < 1e-12);
        assert_eq!(p.conj().conj(), p);
        assert!(a.sub(&a).unwrap().is_zero());
        assert_eq!(a.lift(30).unwrap().to_complex(), a.lift(30).unwrap().to_complex());
        assert!((a.lift(30).unwrap().to_complex() - a.to_complex()).norm() < 1e-12);
    }

    #[test]
    fn float_values() {
        assert!(UnitValue::float(0.6, 0.8).is_ok());
        assert_eq!(UnitValue::float(0.6, 0.7), Err(Error::NotUnimodular));
        let f = UnitValue::float(0.0, 1.0).unwrap();
        assert!(f.approx_eq(&r(1, 4)));
        let s = SumValue::of(&[f, r(3, 4)]).unwrap();
        assert!(matches!(s, SumValue::Float(_)));
        assert!(s.is_zero());
    }
}
