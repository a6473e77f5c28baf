//! Univariate polynomials over the rationals and the exact root machinery
//! built on them: Sturm sequences, real algebraic numbers given by an
//! isolating interval, unit-circle roots of integer polynomials and
//! resultants.
//!
//! Coefficient vectors are stored constant term first.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Error, Result};
use crate::exactnum::{cyclotomic_polynomial, euler_phi};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

fn sign(x: &Q) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// A polynomial with rational coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    c: Vec<Q>,
}

impl Poly {
    pub fn new(mut c: Vec<Q>) -> Poly {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Poly {
        Poly { c: Vec::new() }
    }

    pub fn constant(x: Q) -> Poly {
        Poly::new(vec![x])
    }

    pub fn x() -> Poly {
        Poly::from_i64(&[0, 1])
    }

    pub fn from_i64(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&v| q(v)).collect())
    }

    pub fn from_ints(c: &[BigInt]) -> Poly {
        Poly::new(c.iter().map(|v| Q::from_integer(v.clone())).collect())
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&Q> {
        self.c.last()
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let z = Q::zero();
        Poly::new((0..n).map(|i| self.c.get(i).unwrap_or(&z) + o.c.get(i).unwrap_or(&z)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &Q) -> Poly {
        Poly::new(self.c.iter().map(|x| x * k).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Q::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }

    pub fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::constant(Q::one()), |acc, _| acc.mul(self))
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc = d.lc().expect("nonzero").clone();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quo = vec![Q::zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let t = &r[i] / &lc;
            if t.is_zero() {
                continue;
            }
            for (j, dc) in d.c.iter().enumerate() {
                r[i - dd + j] -= &t * dc;
            }
            quo[i - dd] = t;
        }
        r.truncate(dd);
        (Poly::new(quo), Poly::new(r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    /// `self / d` when the division is exact.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (quo, r) = self.divrem(d);
        r.is_zero().then_some(quo)
    }

    pub fn monic(&self) -> Poly {
        match self.lc() {
            Some(l) => self.scale(&l.recip()),
            None => Poly::zero(),
        }
    }

    /// Monic greatest common divisor; zero only if both inputs are zero.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(self.c.iter().enumerate().skip(1).map(|(k, x)| x * q(k as i64)).collect())
    }

    /// Monic product of the distinct irreducible factors.
    pub fn squarefree(&self) -> Poly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        self.exact_div(&self.gcd(&self.derivative())).expect("gcd divides").monic()
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.c.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    pub fn sign_at(&self, x: &Q) -> i8 {
        sign(&self.eval(x))
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.c.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.to_f64().iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    /// `x^deg · p(1/x)`.
    pub fn reversed(&self) -> Poly {
        Poly::new(self.c.iter().rev().cloned().collect())
    }

    /// Integer multiple with coprime coefficients and positive leading term.
    pub fn primitive(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let den = self.c.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let ints: Vec<BigInt> = self.c.iter().map(|x| (x * Q::from_integer(den.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        let s = if ints.last().expect("nonzero").is_negative() { -g } else { g };
        ints.iter().map(|x| x / &s).collect()
    }
}

/// Chebyshev polynomial `T_n`, with `T_n(cos θ) = cos nθ`.
pub fn chebyshev_t(n: usize) -> Poly {
    let (mut a, mut b) = (Poly::from_i64(&[1]), Poly::x());
    if n == 0 {
        return a;
    }
    for _ in 1..n {
        let next = Poly::from_i64(&[0, 2]).mul(&b).sub(&a);
        a = b;
        b = next;
    }
    b
}

/// Chebyshev polynomial of the second kind, `U_n(cos θ) = sin((n+1)θ)/sin θ`.
pub fn chebyshev_u(n: usize) -> Poly {
    let (mut a, mut b) = (Poly::from_i64(&[1]), Poly::from_i64(&[0, 2]));
    if n == 0 {
        return a;
    }
    for _ in 1..n {
        let next = Poly::from_i64(&[0, 2]).mul(&b).sub(&a);
        a = b;
        b = next;
    }
    b
}

/// Sturm sequence of a polynomial.
#[derive(Clone, Debug)]
pub struct Sturm {
    seq: Vec<Poly>,
}

impl Sturm {
    pub fn new(p: &Poly) -> Sturm {
        let mut seq = vec![p.clone()];
        let mut cur = p.derivative();
        while !cur.is_zero() {
            let next = seq.last().expect("nonempty").rem(&cur).neg();
            seq.push(cur);
            cur = next;
        }
        Sturm { seq }
    }

    fn variations(&self, x: &Q) -> usize {
        let mut last = 0i8;
        let mut v = 0;
        for p in &self.seq {
            let s = p.sign_at(x);
            if s != 0 {
                if last != 0 && s != last {
                    v += 1;
                }
                last = s;
            }
        }
        v
    }

    /// Distinct real roots in `(a, b)`, for `a < b` that are not roots.
    pub fn count(&self, a: &Q, b: &Q) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

/// A real root of a squarefree polynomial, pinned by `lo ≤ root ≤ hi`.
///
/// Either `lo == hi` (a rational root) or the polynomial has opposite signs
/// at the endpoints and exactly one root between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealAlgebraic {
    pub poly: Poly,
    pub lo: Q,
    pub hi: Q,
}

impl RealAlgebraic {
    pub fn rational(x: Q) -> RealAlgebraic {
        RealAlgebraic { poly: Poly::new(vec![-x.clone(), Q::one()]), lo: x.clone(), hi: x }
    }

    pub fn as_rational(&self) -> Option<&Q> {
        (self.lo == self.hi).then_some(&self.lo)
    }

    fn bisect(&mut self) {
        if self.lo == self.hi {
            return;
        }
        let mid = (&self.lo + &self.hi) / q(2);
        match self.poly.sign_at(&mid) {
            0 => {
                self.lo = mid.clone();
                self.hi = mid;
            }
            s if s == self.poly.sign_at(&self.lo) => self.lo = mid,
            _ => self.hi = mid,
        }
    }

    /// Shrinks the interval below `width`.
    pub fn refine(&mut self, width: &Q) {
        while &self.hi - &self.lo > *width {
            self.bisect();
        }
    }

    pub fn approx(&self) -> f64 {
        let mut r = self.clone();
        r.refine(&Q::new(BigInt::one(), BigInt::one() << 64));
        ((&r.lo + &r.hi) / q(2)).to_f64().unwrap_or(f64::NAN)
    }

    /// Exact comparison with a rational.
    pub fn cmp_q(&self, x: &Q) -> Ordering {
        if self.lo == self.hi {
            return self.lo.cmp(x);
        }
        if *x <= self.lo {
            return Ordering::Greater;
        }
        if *x >= self.hi {
            return Ordering::Less;
        }
        match self.poly.sign_at(x) {
            0 => Ordering::Equal,
            s if s == self.poly.sign_at(&self.lo) => Ordering::Greater,
            _ => Ordering::Less,
        }
    }

    /// Exact sign of `p` at this number.
    pub fn sign_of(&self, p: &Poly) -> i8 {
        if let Some(x) = self.as_rational() {
            return p.sign_at(x);
        }
        let p = p.rem(&self.poly);
        if p.is_zero() {
            return 0;
        }
        let g = self.poly.gcd(&p);
        if g.degree().unwrap_or(0) > 0 && Sturm::new(&g).count(&self.lo, &self.hi) == 1 {
            return 0;
        }
        let st = Sturm::new(&p.squarefree());
        let mut r = self.clone();
        loop {
            if let Some(x) = r.as_rational() {
                return p.sign_at(x);
            }
            let (a, b) = (p.sign_at(&r.lo), p.sign_at(&r.hi));
            if a != 0 && b != 0 && st.count(&r.lo, &r.hi) == 0 {
                return a;
            }
            r.bisect();
        }
    }
}

/// Cauchy bound: every root has absolute value below it.
fn root_bound(p: &Poly) -> Q {
    let lc = p.lc().expect("nonzero").abs();
    let m = p.c.iter().map(|x| x.abs() / &lc).max().unwrap_or_else(Q::zero);
    m + q(1)
}

/// All real roots of a squarefree polynomial, in increasing order.
pub fn real_roots(p: &Poly) -> Vec<RealAlgebraic> {
    let p = p.monic();
    let Some(d) = p.degree() else { return Vec::new() };
    if d == 0 {
        return Vec::new();
    }
    let st = Sturm::new(&p);
    let b = root_bound(&p);
    let mut out = Vec::new();
    isolate(&p, &st, -b.clone(), b, &mut out);
    for r in &mut out {
        // Collapse rational roots found exactly at a refinement step.
        if r.poly.degree() == Some(1) {
            let x = -&r.poly.c[0] / &r.poly.c[1];
            *r = RealAlgebraic::rational(x);
        }
    }
    out
}

fn isolate(p: &Poly, st: &Sturm, a: Q, b: Q, out: &mut Vec<RealAlgebraic>) {
    let n = st.count(&a, &b);
    if n == 0 {
        return;
    }
    if n == 1 {
        out.push(RealAlgebraic { poly: p.clone(), lo: a, hi: b });
        return;
    }
    // A split point that is not itself a root.
    let mut k = 2i64;
    let mid = loop {
        let t = &a + (&b - &a) * q_frac(k / 2, k + 1 - (k % 2));
        if p.sign_at(&t) != 0 {
            break t;
        }
        k += 1;
    };
    isolate(p, st, a, mid.clone(), out);
    isolate(p, st, mid, b, out);
}

/// Complex roots of a real polynomial by Aberth–Ehrlich iteration.
pub fn complex_roots(c: &[f64]) -> Vec<Complex64> {
    let c: Vec<Complex64> = c.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    complex_roots_c(&c)
}

/// Complex roots of a complex polynomial, constant term first.
pub fn complex_roots_c(c: &[Complex64]) -> Vec<Complex64> {
    let mut c = c.to_vec();
    while c.last().is_some_and(|z| z.norm() == 0.0) {
        c.pop();
    }
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lc = c[n];
    let monic: Vec<Complex64> = c.iter().map(|&x| x / lc).collect();
    if n == 1 {
        return vec![-monic[0]];
    }
    let deriv: Vec<Complex64> = (1..=n).map(|k| monic[k] * k as f64).collect();
    let ev = |p: &[Complex64], z: Complex64| p.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &x| acc * z + x);
    let radius = 1.0 + monic[..n].iter().map(|x| x.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let t = 2.0 * core::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            Complex64::new(libm::cos(t), libm::sin(t)) * (0.5 * radius)
        })
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for k in 0..n {
            let pk = ev(&monic, z[k]);
            if pk.norm() == 0.0 {
                continue;
            }
            let ratio = pk / ev(&deriv, z[k]);
            let s: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[k] -= w;
                moved = moved.max(w.norm());
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let e = &n / &d;
            if e != d {
                out.push(e);
            }
        }
        d += 1;
    }
    out.sort();
    out
}

/// Largest degree for which [`factor_squarefree`] searches root subsets.
pub const FACTOR_DEGREE_CAP: usize = 16;

/// Irreducible factors over the rationals of a squarefree polynomial, as
/// primitive integer polynomials.
///
/// Candidate factors come from products of numerical roots scaled by
/// divisors of the leading coefficient, and are accepted only after exact
/// division. Above [`FACTOR_DEGREE_CAP`] the input is returned whole and the
/// flag is false.
pub fn factor_squarefree(p: &Poly) -> (Vec<Vec<BigInt>>, bool) {
    let mut rest = Poly::from_ints(&p.primitive());
    let Some(n) = rest.degree() else { return (Vec::new(), true) };
    if n == 0 {
        return (Vec::new(), true);
    }
    if n > FACTOR_DEGREE_CAP {
        return (vec![rest.primitive()], false);
    }
    let mut roots = complex_roots(&rest.to_f64());
    let mut out = Vec::new();
    'outer: while rest.degree().unwrap_or(0) > 0 {
        let lc = rest.lc().expect("nonzero").to_integer();
        let first = roots[0];
        let others = &roots[1..];
        for size in 0..=others.len() {
            for subset in Combinations::new(others.len(), size) {
                let mut prod = vec![Complex64::new(1.0, 0.0)];
                for z in core::iter::once(first).chain(subset.iter().map(|&i| others[i])) {
                    let mut next = vec![Complex64::new(0.0, 0.0); prod.len() + 1];
                    for (k, c) in prod.iter().enumerate() {
                        next[k + 1] += c;
                        next[k] -= c * z;
                    }
                    prod = next;
                }
                if prod.iter().any(|c| c.im.abs() > 1e-6 * (1.0 + c.re.abs())) {
                    continue;
                }
                for d in divisors(&lc) {
                    let df = d.to_f64().unwrap_or(f64::NAN);
                    let cand: Vec<f64> = prod.iter().map(|c| c.re * df).collect();
                    if cand.iter().any(|x| (x - libm::round(*x)).abs() > 1e-4 * (1.0 + x.abs())) {
                        continue;
                    }
                    let ints: Vec<BigInt> = cand.iter().map(|x| BigInt::from(libm::round(*x) as i64)).collect();
                    let f = Poly::from_ints(&ints);
                    if let Some(quo) = rest.exact_div(&f) {
                        out.push(f.primitive());
                        rest = quo;
                        let used: Vec<usize> = subset.iter().map(|&i| i + 1).collect();
                        roots = roots.iter().enumerate().filter(|(i, _)| *i != 0 && !used.contains(i)).map(|(_, z)| *z).collect();
                        continue 'outer;
                    }
                }
            }
        }
        // Numerical trouble; keep the remainder whole.
        out.push(rest.primitive());
        return (out, false);
    }
    (out, true)
}

/// Index subsets of a given size in lexicographic order.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Combinations {
        Combinations { n, idx: (0..k).collect(), done: k > n }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// A pair `e^{±iθ}` of unit-circle roots that are not roots of unity,
/// described by `c = cos θ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosRoot {
    /// `c` with its minimal polynomial when `minimal` holds, otherwise a
    /// squarefree polynomial vanishing at `c`.
    pub root: RealAlgebraic,
    pub minimal: bool,
}

impl CosRoot {
    pub fn cos(&self) -> f64 {
        self.root.approx()
    }

    /// `e^{iθ}` with `θ ∈ (0, π)`.
    pub fn point(&self) -> Complex64 {
        let c = self.cos();
        Complex64::new(c, libm::sqrt((1.0 - c * c).max(0.0)))
    }
}

/// Unit-circle roots of an integer polynomial.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UnitCircleRoots {
    /// `(d, m)`: `Φ_d` divides with multiplicity `m`.
    pub cyclotomic: Vec<(u64, usize)>,
    pub cosines: Vec<CosRoot>,
}

fn int_divrem_monic(p: &[BigInt], d: &[i64]) -> Option<Vec<BigInt>> {
    let dd = d.len() - 1;
    if p.len() <= dd {
        return None;
    }
    let mut r = p.to_vec();
    let mut quo = vec![BigInt::zero(); p.len() - dd];
    for i in (dd..r.len()).rev() {
        let t = r[i].clone();
        if t.is_zero() {
            continue;
        }
        for (j, &c) in d.iter().enumerate() {
            r[i - dd + j] -= &t * c;
        }
        quo[i - dd] = t;
    }
    r[..dd].iter().all(Zero::is_zero).then_some(quo)
}

/// All roots of `p` on the unit circle, exactly.
///
/// Cyclotomic factors are removed by trial division. Any remaining unit root
/// `z` is also a root of the reversed polynomial, so it divides
/// `G = gcd(p, p*)`, which is self-reciprocal of even degree `2m`. Writing
/// `x^{-m} G(x)` in `c = (x + 1/x)/2` gives a degree-`m` polynomial whose
/// roots in `(-1, 1)` are exactly the cosines of the remaining unit roots.
pub fn unit_circle_roots(p: &[BigInt]) -> Result<UnitCircleRoots> {
    let mut p: Vec<BigInt> = p.to_vec();
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    if p.is_empty() {
        return Err(Error::IdenticallyZero);
    }
    let low = p.iter().position(|c| !c.is_zero()).expect("nonzero");
    p.drain(..low);
    let n = p.len() - 1;
    let mut out = UnitCircleRoots::default();
    let bound = 24.max(2 * n * n) as u64;
    for d in 1..=bound {
        if euler_phi(d) as usize > p.len() - 1 {
            continue;
        }
        let phi = cyclotomic_polynomial(d);
        let mut m = 0;
        while let Some(quo) = int_divrem_monic(&p, &phi) {
            p = quo;
            m += 1;
        }
        if m > 0 {
            out.cyclotomic.push((d, m));
        }
    }
    if p.len() <= 1 {
        return Ok(out);
    }
    let r = Poly::from_ints(&p);
    let g = r.gcd(&r.reversed());
    let deg = g.degree().unwrap_or(0);
    if deg == 0 {
        return Ok(out);
    }
    if deg % 2 == 1 {
        return domain("reciprocal part has odd degree after removing cyclotomic factors");
    }
    let gi = g.primitive();
    let m = deg / 2;
    let mut h = Poly::constant(Q::from_integer(gi[m].clone()));
    for j in 1..=m {
        h = h.add(&chebyshev_t(j).scale(&Q::from_integer(&gi[m + j] * 2)));
    }
    let hs = h.squarefree();
    let roots: Vec<RealAlgebraic> = real_roots(&hs)
        .into_iter()
        .filter(|r| r.cmp_q(&q(-1)) == Ordering::Greater && r.cmp_q(&q(1)) == Ordering::Less)
        .collect();
    if roots.is_empty() {
        return Ok(out);
    }
    let (factors, complete) = factor_squarefree(&hs);
    for r in roots {
        let f =
            factors.iter().map(|f| Poly::from_ints(f)).find(|f| r.sign_of(f) == 0).expect("some factor vanishes at each root");
        let mut root = RealAlgebraic { poly: f.monic(), lo: r.lo.clone(), hi: r.hi.clone() };
        // The old interval isolates `c` for `hs`, hence for its factor; the
        // endpoint signs must be re-derived for the new polynomial.
        if root.poly.degree() == Some(1) {
            root = RealAlgebraic::rational(-&root.poly.c[0]);
        } else {
            while root.poly.sign_at(&root.lo) == 0 || root.poly.sign_at(&root.hi) == 0 {
                let mut t = r.clone();
                t.bisect();
                root.lo = t.lo;
                root.hi = t.hi;
            }
        }
        out.cosines.push(CosRoot { root, minimal: complete });
    }
    Ok(out)
}

fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Sylvester resultant of two polynomials with formal degrees `len - 1`.
pub fn resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let (m, n) = (f.len().saturating_sub(1), g.len().saturating_sub(1));
    let size = m + n;
    let mut rows = vec![vec![BigInt::zero(); size]; size];
    for i in 0..n {
        for (k, c) in f.iter().rev().enumerate() {
            rows[i][i + k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in g.iter().rev().enumerate() {
            rows[n + i][i + k] = c.clone();
        }
    }
    bareiss_det(rows)
}

/// `Res_y(f, g)` for `f = Σ_j f[j](x)·y^j`, as a polynomial in `x`.
///
/// Evaluates at `x = 0, 1, …, D` with `D` the Bezout-style degree bound and
/// interpolates.
pub fn resultant_y(f: &[Vec<BigInt>], g: &[Vec<BigInt>]) -> Vec<BigInt> {
    let dx = |p: &[Vec<BigInt>]| p.iter().map(|c| c.len().saturating_sub(1)).max().unwrap_or(0);
    let (m, n) = (f.len().saturating_sub(1), g.len().saturating_sub(1));
    let bound = m * dx(g) + n * dx(f);
    let eval = |p: &[BigInt], x: i64| p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c);
    let xs: Vec<i64> = (0..=bound as i64).collect();
    let ys: Vec<Q> = xs
        .iter()
        .map(|&x| {
            let fx: Vec<BigInt> = f.iter().map(|c| eval(c, x)).collect();
            let gx: Vec<BigInt> = g.iter().map(|c| eval(c, x)).collect();
            Q::from_integer(resultant(&fx, &gx))
        })
        .collect();
    let p = interpolate(&xs, &ys);
    p.coeffs().iter().map(|c| c.to_integer()).collect()
}

/// Newton interpolation through `(xs[i], ys[i])`.
pub fn interpolate(xs: &[i64], ys: &[Q]) -> Poly {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / q(xs[i] - xs[i - level]);
        }
    }
    let mut p = Poly::zero();
    for i in (0..n).rev() {
        p = p.mul(&Poly::from_i64(&[-xs[i], 1])).add(&Poly::constant(dd[i].clone()));
    }
    p
}
