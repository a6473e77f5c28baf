//! Zero sets of Laurent polynomials in two variables on the unit torus.
//!
//! Two independent complex equations meet in finitely many points, which are
//! found by eliminating `b` with a resultant, solving the univariate
//! resultant on the unit circle exactly and back-solving for `b`. A single
//! real-valued equation cuts out a curve, which is sampled on a grid and
//! refined by bisection.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;

use super::laurent::LaurentPoly;
use crate::error::Result;
use crate::exactnum::Turn;
use crate::poly::{complex_roots_c, resultant_y, unit_circle_roots};

/// Grid resolution per angle for curve sampling.
pub const GRID: usize = 720;

/// Residual bound every reported numeric point satisfies.
pub const RESIDUAL_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PlanePoint {
    Exact([Turn; 2]),
    /// Angles `(θ1, θ2)` of `a = e^{iθ1}`, `b = e^{iθ2}`.
    Numeric([f64; 2]),
}

impl PlanePoint {
    pub fn angles(&self) -> [f64; 2] {
        match self {
            PlanePoint::Exact(t) => [2.0 * PI * t[0].as_f64(), 2.0 * PI * t[1].as_f64()],
            PlanePoint::Numeric(a) => *a,
        }
    }
}

/// Which real function of a polynomial a curve scan follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    Re,
    Im,
}

fn part_at(p: &LaurentPoly, part: Part, t1: f64, t2: f64) -> f64 {
    let z = p.eval_angles(t1, t2);
    match part {
        Part::Re => z.re,
        Part::Im => z.im,
    }
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-16 {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Outcome of sampling the curve `part(p) = 0`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CurveScan {
    /// First curve point met, in scan order.
    pub first: Option<[f64; 2]>,
    /// First curve point that the caller accepted.
    pub accepted: Option<[f64; 2]>,
}

/// Walks the grid edges in both directions, refines each sign change by
/// bisection and offers the point to `accept` until it returns true.
pub fn scan_curve(p: &LaurentPoly, part: Part, mut accept: impl FnMut([f64; 2]) -> bool) -> CurveScan {
    let n = GRID;
    let step = 2.0 * PI / n as f64;
    let (cos, sin): (Vec<f64>, Vec<f64>) = (0..n).map(|k| (libm::cos(k as f64 * step), libm::sin(k as f64 * step))).unzip();
    let terms: Vec<([i32; 2], f64)> = p.terms().map(|(e, c)| (e, c as f64)).collect();
    let table = match part {
        Part::Re => &cos,
        Part::Im => &sin,
    };
    let wrap = |x: i64| x.rem_euclid(n as i64) as usize;
    let mut grid = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            grid[i * n + j] = terms.iter().map(|(e, c)| c * table[wrap(e[0] as i64 * i as i64 + e[1] as i64 * j as i64)]).sum();
        }
    }
    let mut out = CurveScan::default();
    let mut offer = |pt: [f64; 2], out: &mut CurveScan| {
        let pt = pt.map(normalize);
        if out.first.is_none() {
            out.first = Some(pt);
        }
        if accept(pt) {
            out.accepted = Some(pt);
            true
        } else {
            false
        }
    };
    for i in 0..n {
        for j in 0..n {
            let (t1, t2) = (i as f64 * step, j as f64 * step);
            let v = grid[i * n + j];
            if v.abs() < 1e-12 {
                if offer([t1, t2], &mut out) {
                    return out;
                }
                continue;
            }
            let right = grid[((i + 1) % n) * n + j];
            if right.abs() >= 1e-12 && (v < 0.0) != (right < 0.0) {
                let t = bisect(|x| part_at(p, part, x, t2), t1, t1 + step);
                if offer([t, t2], &mut out) {
                    return out;
                }
            }
            let up = grid[i * n + (j + 1) % n];
            if up.abs() >= 1e-12 && (v < 0.0) != (up < 0.0) {
                let t = bisect(|x| part_at(p, part, t1, x), t2, t2 + step);
                if offer([t1, t], &mut out) {
                    return out;
                }
            }
        }
    }
    out
}

fn value_and_grad(p: &LaurentPoly, t: [f64; 2]) -> (Complex64, Complex64, Complex64) {
    let (mut v, mut d1, mut d2) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    for (e, c) in p.terms() {
        let ph = e[0] as f64 * t[0] + e[1] as f64 * t[1];
        let z = Complex64::new(libm::cos(ph), libm::sin(ph)) * c as f64;
        v += z;
        d1 += z * Complex64::new(0.0, e[0] as f64);
        d2 += z * Complex64::new(0.0, e[1] as f64);
    }
    (v, d1, d2)
}

/// Gauss–Newton on the real and imaginary parts of all equations.
fn polish(eqs: &[&LaurentPoly], mut t: [f64; 2]) -> [f64; 2] {
    for _ in 0..30 {
        let (mut a11, mut a12, mut a22, mut g1, mut g2) = (0.0, 0.0, 0.0, 0.0, 0.0);
        let mut res = 0.0f64;
        for p in eqs {
            let (v, d1, d2) = value_and_grad(p, t);
            res = res.max(v.norm());
            for (r, j1, j2) in [(v.re, d1.re, d2.re), (v.im, d1.im, d2.im)] {
                a11 += j1 * j1;
                a12 += j1 * j2;
                a22 += j2 * j2;
                g1 += j1 * r;
                g2 += j2 * r;
            }
        }
        if res < 1e-15 {
            break;
        }
        let det = a11 * a22 - a12 * a12;
        if det.abs() < 1e-300 {
            break;
        }
        let s1 = (a22 * g1 - a12 * g2) / det;
        let s2 = (a11 * g2 - a12 * g1) / det;
        t = [t[0] - s1, t[1] - s2];
        if s1.abs() + s2.abs() < 1e-16 {
            break;
        }
    }
    t
}

fn residual(eqs: &[&LaurentPoly], t: [f64; 2]) -> f64 {
    eqs.iter().map(|p| p.eval_angles(t[0], t[1]).norm()).fold(0.0, f64::max)
}

fn snap(eqs: &[&LaurentPoly], a: Turn, t2: f64) -> Option<[Turn; 2]> {
    let n = a.den().lcm(&24);
    let k = libm::round(t2 / (2.0 * PI) * n as f64) as i64;
    let b = Turn::new(k, n).ok()?;
    eqs.iter().all(|p| p.eval_exact(a, b).is_ok_and(|v| v.is_zero())).then_some([a, b])
}

/// The same angle in `[0, 2π)`.
pub(crate) fn normalize(t: f64) -> f64 {
    t - 2.0 * PI * libm::floor(t / (2.0 * PI))
}

/// Distance between two angles on the circle.
pub(crate) fn angle_dist(x: f64, y: f64) -> f64 {
    let d = normalize(x - y);
    d.min(2.0 * PI - d)
}

/// Common zeros of `f` and `g` on the torus, or `None` when the resultant
/// in `b` vanishes identically (a shared curve component).
pub fn torus_points(f: &LaurentPoly, g: &LaurentPoly) -> Result<Option<Vec<PlanePoint>>> {
    let res = resultant_y(&f.to_bivariate(), &g.to_bivariate());
    if res.iter().all(|c| c.sign() == num_bigint::Sign::NoSign) {
        return Ok(None);
    }
    let roots = unit_circle_roots(&res)?;
    let mut a_values: Vec<(f64, Option<Turn>)> = Vec::new();
    for (d, _) in &roots.cyclotomic {
        for k in 0..*d {
            if k.gcd(d) == 1 {
                let t = Turn::new(k as i64, *d)?;
                a_values.push((2.0 * PI * t.as_f64(), Some(t)));
            }
        }
    }
    for c in &roots.cosines {
        let th = libm::acos(c.cos());
        a_values.push((th, None));
        a_values.push((-th, None));
    }
    let eqs = [f, g];
    let mut out: Vec<PlanePoint> = Vec::new();
    for (t1, exact) in a_values {
        let a = Complex64::new(libm::cos(t1), libm::sin(t1));
        let mut coeffs = f.coeffs_in_b(a);
        if coeffs.iter().all(|z| z.norm() < 1e-9) {
            coeffs = g.coeffs_in_b(a);
        }
        if coeffs.iter().all(|z| z.norm() < 1e-9) {
            // Both vanish on the whole fiber over `a`.
            return Ok(None);
        }
        for b in complex_roots_c(&coeffs) {
            if (b.norm() - 1.0).abs() > 1e-6 {
                continue;
            }
            let t2 = b.arg();
            let pt = match exact.and_then(|ta| snap(&eqs, ta, t2)) {
                Some(ex) => PlanePoint::Exact(ex),
                None => {
                    let t = polish(&eqs, [t1, t2]);
                    if residual(&eqs, t) > RESIDUAL_TOL {
                        continue;
                    }
                    PlanePoint::Numeric(t.map(normalize))
                }
            };
            let ang = pt.angles();
            let dup = out.iter().any(|q| {
                let o = q.angles();
                angle_dist(o[0], ang[0]) < 1e-7 && angle_dist(o[1], ang[1]) < 1e-7
            });
            if !dup {
                out.push(pt);
            }
        }
    }
    Ok(Some(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finite_intersection() {
        // a + b = 0 and a − b̄ = 0 meet where a = ±i, b = ∓i.
        let f = LaurentPoly::from_terms(2, [([1, 0], 1), ([0, 1], 1)]);
        let g = LaurentPoly::from_terms(2, [([1, 0], 1), ([0, -1], -1)]);
        let pts = torus_points(&f, &g).unwrap().unwrap();
        assert_eq!(pts.len(), 2);
        for p in pts {
            let PlanePoint::Exact([a, b]) = p else { panic!("expected exact points") };
            assert_eq!(a.den(), 4);
            assert_eq!(a.add(b), Turn::new(0, 1).unwrap());
        }
    }

    #[test]
    fn shared_component_is_reported() {
        let f = LaurentPoly::from_terms(2, [([1, 0], 1), ([0, 1], -1)]);
        assert_eq!(torus_points(&f, &f.scale(2)).unwrap(), None);
    }

    #[test]
    fn curve_scan_finds_points() {
        // Re(a + b) = cos θ1 + cos θ2 vanishes along θ2 = π ± θ1.
        let f = LaurentPoly::from_terms(2, [([1, 0], 1), ([0, 1], 1)]);
        let scan = scan_curve(&f, Part::Re, |t| (t[0] - 1.0).abs() < 0.01);
        let t = scan.accepted.unwrap();
        assert!(part_at(&f, Part::Re, t[0], t[1]).abs() < 1e-12);
    }
}
