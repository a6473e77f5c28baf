use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::exactnum::{common_order, CycSum, Turn};

/// An integer Laurent polynomial in `a` (and `b` when two variables are in
/// play). On the unit torus conjugation is exponent negation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    vars: usize,
    terms: BTreeMap<[i32; 2], i64>,
}

impl LaurentPoly {
    pub fn zero(vars: usize) -> LaurentPoly {
        assert!(vars == 1 || vars == 2, "one or two variables");
        LaurentPoly { vars, terms: BTreeMap::new() }
    }

    pub fn from_terms(vars: usize, terms: impl IntoIterator<Item = ([i32; 2], i64)>) -> LaurentPoly {
        let mut p = LaurentPoly::zero(vars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// One-variable shorthand: `(exponent, coefficient)` pairs.
    pub fn univariate(terms: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(1, terms.iter().map(|&(e, c)| ([e, 0], c)))
    }

    fn add_term(&mut self, e: [i32; 2], c: i64) {
        assert!(self.vars == 2 || e[1] == 0, "b exponent in a one-variable polynomial");
        let v = self.terms.entry(e).or_insert(0);
        *v += c;
        if *v == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ([i32; 2], i64)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, *c))
    }

    pub fn coeff(&self, e: [i32; 2]) -> i64 {
        self.terms.get(&e).copied().unwrap_or(0)
    }

    pub fn add(&self, o: &LaurentPoly) -> LaurentPoly {
        let mut p = self.clone();
        p.vars = self.vars.max(o.vars);
        for (e, c) in o.terms() {
            p.add_term(e, c);
        }
        p
    }

    pub fn scale(&self, k: i64) -> LaurentPoly {
        LaurentPoly::from_terms(self.vars, self.terms().map(|(e, c)| (e, c * k)))
    }

    pub fn sub(&self, o: &LaurentPoly) -> LaurentPoly {
        self.add(&o.scale(-1))
    }

    pub fn mul(&self, o: &LaurentPoly) -> LaurentPoly {
        let mut p = LaurentPoly::zero(self.vars.max(o.vars));
        for (e, c) in self.terms() {
            for (f, d) in o.terms() {
                p.add_term([e[0] + f[0], e[1] + f[1]], c * d);
            }
        }
        p
    }

    pub fn conj(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.vars, self.terms().map(|(e, c)| ([-e[0], -e[1]], c)))
    }

    /// Real-valued on the torus.
    pub fn is_self_conjugate(&self) -> bool {
        *self == self.conj()
    }

    /// `p − conj(p)`, which vanishes exactly where `p` is real.
    pub fn imaginary_part(&self) -> LaurentPoly {
        self.sub(&self.conj())
    }

    pub fn eval(&self, a: Complex64, b: Complex64) -> Complex64 {
        self.terms().map(|(e, c)| a.powi(e[0]) * b.powi(e[1]) * c as f64).sum()
    }

    /// Value at `a = e^{iθ1}`, `b = e^{iθ2}`.
    pub fn eval_angles(&self, t1: f64, t2: f64) -> Complex64 {
        self.terms()
            .map(|(e, c)| {
                let t = e[0] as f64 * t1 + e[1] as f64 * t2;
                Complex64::new(libm::cos(t), libm::sin(t)) * c as f64
            })
            .sum()
    }

    /// Exact value at roots of unity.
    pub fn eval_exact(&self, a: Turn, b: Turn) -> Result<CycSum> {
        let n = common_order([a, b], 1)?;
        let terms: Vec<(i64, i64)> = self
            .terms()
            .map(|(e, c)| {
                let t = a.times(e[0] as i64).add(b.times(e[1] as i64));
                (t.exponent_at(n) as i64, c)
            })
            .collect();
        CycSum::from_terms(n, &terms)
    }

    fn min_exp(&self, i: usize) -> i32 {
        self.terms.keys().map(|e| e[i]).min().unwrap_or(0)
    }

    fn max_exp(&self, i: usize) -> i32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    /// Coefficients of `a^{-lo}·p` for a one-variable polynomial, constant
    /// term first.
    pub fn to_poly(&self) -> Result<Vec<BigInt>> {
        if self.vars != 1 {
            return domain("expected a one-variable polynomial");
        }
        let lo = self.min_exp(0);
        let mut c = vec![BigInt::from(0); (self.max_exp(0) - lo + 1) as usize];
        for (e, v) in self.terms() {
            c[(e[0] - lo) as usize] = BigInt::from(v);
        }
        Ok(c)
    }

    /// `a^{-lo_a} b^{-lo_b}·p` as coefficients in `b`, each a polynomial in
    /// `a`: `out[j][i]` multiplies `a^i b^j`.
    pub fn to_bivariate(&self) -> Vec<Vec<BigInt>> {
        let (la, lb) = (self.min_exp(0), self.min_exp(1));
        let (da, db) = ((self.max_exp(0) - la) as usize, (self.max_exp(1) - lb) as usize);
        let mut out = vec![vec![BigInt::from(0); da + 1]; db + 1];
        for (e, v) in self.terms() {
            out[(e[1] - lb) as usize][(e[0] - la) as usize] = BigInt::from(v);
        }
        out
    }

    /// Coefficients in `b` at a fixed numeric `a`, lowest power first, after
    /// multiplying by `b^{-lo_b}`.
    pub fn coeffs_in_b(&self, a: Complex64) -> Vec<Complex64> {
        let lb = self.min_exp(1);
        let mut out = vec![Complex64::new(0.0, 0.0); (self.max_exp(1) - lb + 1) as usize];
        for (e, v) in self.terms() {
            out[(e[1] - lb) as usize] += a.powi(e[0]) * v as f64;
        }
        out
    }
}

fn sort_key(e: &[i32; 2]) -> (i32, i32, bool, bool) {
    (e[0].abs() + e[1].abs(), e[1].abs(), e[0] < 0, e[1] < 0)
}

fn power(out: &mut String, sym: &str, e: i32) {
    if e == 0 {
        return;
    }
    match (sym, e < 0) {
        ("a", true) => out.push('ā'),
        (_, true) => {
            out.push_str(sym);
            out.push('\u{304}');
        }
        _ => out.push_str(sym),
    }
    match e.abs() {
        1 => {}
        2 => out.push('²'),
        3 => out.push('³'),
        k => {
            use core::fmt::Write;
            let _ = write!(out, "^{k}");
        }
    }
}

/// `a`, `ā`, `a²`, `ab̄`, `bā`, … as they are usually written.
pub fn monomial_name(e: [i32; 2]) -> String {
    let mut s = String::new();
    if e[0] < 0 && e[1] > 0 {
        power(&mut s, "b", e[1]);
        power(&mut s, "a", e[0]);
    } else {
        power(&mut s, "a", e[0]);
        power(&mut s, "b", e[1]);
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<([i32; 2], i64)> = self.terms().collect();
        terms.sort_by_key(|(e, _)| sort_key(e));
        for (k, (e, c)) in terms.iter().enumerate() {
            let constant = *e == [0, 0];
            match (*c < 0, k) {
                (true, _) => write!(f, "-")?,
                (false, 0) => {}
                (false, _) => write!(f, "+")?,
            }
            let m = c.abs();
            if constant {
                write!(f, "{m}")?;
            } else {
                if m != 1 {
                    write!(f, "{m}")?;
                }
                write!(f, "{}", monomial_name(*e))?;
            }
        }
        Ok(())
    }
}
