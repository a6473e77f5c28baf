//! The 6×6 matrix type and the Hadamard predicate.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{domain, Error, Result};
use crate::exactnum::{SumValue, Turn, UnitValue, TOL};

pub const N: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Float,
}

/// A 6×6 matrix of unimodular entries, all exact or all float.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Matrix6 {
    e: [[UnitValue; N]; N],
}

impl Matrix6 {
    pub fn new(e: [[UnitValue; N]; N]) -> Result<Matrix6> {
        let exact = e.iter().flatten().filter(|v| v.is_exact()).count();
        if exact != 0 && exact != N * N {
            return Err(Error::MixedMode);
        }
        Ok(Matrix6 { e })
    }

    pub fn from_turns(t: [[Turn; N]; N]) -> Matrix6 {
        Matrix6 { e: t.map(|row| row.map(UnitValue::Root)) }
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> UnitValue) -> Result<Matrix6> {
        Matrix6::new(core::array::from_fn(|i| core::array::from_fn(|j| f(i, j))))
    }

    pub fn mode(&self) -> Mode {
        if self.e[0][0].is_exact() {
            Mode::Exact
        } else {
            Mode::Float
        }
    }

    pub fn is_exact(&self) -> bool {
        self.mode() == Mode::Exact
    }

    pub fn get(&self, i: usize, j: usize) -> UnitValue {
        self.e[i][j]
    }

    pub fn entries(&self) -> &[[UnitValue; N]; N] {
        &self.e
    }

    pub fn row(&self, i: usize) -> [UnitValue; N] {
        self.e[i]
    }

    pub fn turn(&self, i: usize, j: usize) -> Option<Turn> {
        self.e[i][j].turn()
    }

    /// All entries as turns, or `NeedsExact`.
    pub fn turns(&self) -> Result<[[Turn; N]; N]> {
        if !self.is_exact() {
            return Err(Error::NeedsExact);
        }
        Ok(self.e.map(|row| row.map(|v| v.turn().expect("exact mode"))))
    }

    pub fn transpose(&self) -> Matrix6 {
        Matrix6 { e: core::array::from_fn(|i| core::array::from_fn(|j| self.e[j][i])) }
    }

    pub fn conj(&self) -> Matrix6 {
        Matrix6 { e: self.e.map(|row| row.map(|v| v.conj())) }
    }

    pub fn to_float(&self) -> Matrix6 {
        Matrix6 { e: self.e.map(|row| row.map(|v| UnitValue::Float(v.to_complex()))) }
    }

    /// Entrywise equality: exact for exact matrices, within tolerance otherwise.
    pub fn approx_eq(&self, o: &Matrix6) -> bool {
        self.e.iter().flatten().zip(o.e.iter().flatten()).all(|(a, b)| a.approx_eq(b))
    }

    /// `Σ_c M[i,c]·conj(M[j,c])`.
    pub fn row_inner_product(&self, i: usize, j: usize) -> Result<SumValue> {
        if i == j || i >= N || j >= N {
            return domain("row inner product needs two distinct rows");
        }
        let terms: Vec<UnitValue> = (0..N).map(|c| self.e[i][c].mul(&self.e[j][c].conj())).collect();
        SumValue::of(&terms)
    }

    /// True iff every pair of rows is orthogonal.
    pub fn is_chm(&self) -> Result<bool> {
        for i in 0..N {
            for j in i + 1..N {
                if !self.row_inner_product(i, j)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Distinct entries in increasing turn (or argument) order.
    pub fn distinct_elements(&self) -> Result<Vec<UnitValue>> {
        if self.is_exact() {
            let mut ts: Vec<Turn> = self.e.iter().flatten().filter_map(|v| v.turn()).collect();
            ts.sort();
            ts.dedup();
            return Ok(ts.into_iter().map(UnitValue::Root).collect());
        }
        let mut reps: Vec<UnitValue> = Vec::new();
        for v in self.e.iter().flatten() {
            let z = v.to_complex();
            let close: Vec<f64> = reps.iter().map(|r| (r.to_complex() - z).norm()).collect();
            let hits = close.iter().filter(|&&d| d <= TOL).count();
            if close.iter().any(|&d| d > TOL && d <= 1e3 * TOL) || hits > 1 {
                return Err(Error::AmbiguousClusters);
            }
            if hits == 0 {
                reps.push(*v);
            }
        }
        let arg = |v: &UnitValue| {
            let z = v.to_complex();
            let a = libm::atan2(z.im, z.re);
            if a < 0.0 {
                a + 2.0 * core::f64::consts::PI
            } else {
                a
            }
        };
        reps.sort_by(|a, b| arg(a).total_cmp(&arg(b)));
        Ok(reps)
    }

    /// `t[k]` = multiplicity of `v` in row `k`.
    pub fn element_row_profile(&self, v: &UnitValue) -> Result<[usize; N]> {
        if !self.is_exact() || !v.is_exact() {
            return Err(Error::NeedsExact);
        }
        Ok(core::array::from_fn(|k| self.e[k].iter().filter(|x| *x == v).count()))
    }

    /// Pointwise product with a unimodular scalar.
    pub fn scale(&self, s: &UnitValue) -> Matrix6 {
        Matrix6 { e: self.e.map(|row| row.map(|v| v.mul(s))) }
    }

    pub fn permute(&self, rows: &[usize; N], cols: &[usize; N]) -> Matrix6 {
        Matrix6 { e: core::array::from_fn(|i| core::array::from_fn(|j| self.e[rows[i]][cols[j]])) }
    }
}

pub fn is_chm(m: &Matrix6) -> Result<bool> {
    m.is_chm()
}

pub fn row_inner_product(m: &Matrix6, i: usize, j: usize) -> Result<SumValue> {
    m.row_inner_product(i, j)
}

pub fn distinct_elements(m: &Matrix6) -> Result<Vec<UnitValue>> {
    m.distinct_elements()
}

pub fn element_row_profile(m: &Matrix6, v: &UnitValue) -> Result<[usize; N]> {
    m.element_row_profile(v)
}

pub fn scale_matrix(m: &Matrix6, s: &UnitValue) -> Matrix6 {
    m.scale(s)
}

impl fmt::Display for Matrix6 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.e {
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog, CatalogName};
    use crate::exactnum::root_of_unity;

    fn r(p: i64, q: u64) -> UnitValue {
        root_of_unity(p, q).unwrap()
    }

    #[test]
    fn hadamard_predicate() {
        assert!(catalog(&CatalogName::S6_0).unwrap().is_chm().unwrap());
        assert!(catalog(&CatalogName::F6).unwrap().is_chm().unwrap());
        let ones = Matrix6::from_fn(|_, _| UnitValue::ONE).unwrap();
        assert!(!ones.is_chm().unwrap());
    }

    #[test]
    fn inner_products() {
        let s = catalog(&CatalogName::S6_0).unwrap();
        assert!(s.row_inner_product(0, 1).unwrap().is_zero());
        let h = catalog(&CatalogName::H1).unwrap();
        assert!(h.row_inner_product(0, 1).unwrap().is_zero());
        let ones = Matrix6::from_fn(|_, _| UnitValue::ONE).unwrap();
        let six = ones.row_inner_product(0, 1).unwrap().to_complex();
        assert!((six.re - 6.0).abs() < 1e-12 && six.im.abs() < 1e-12);
        assert!(ones.row_inner_product(2, 2).is_err());
    }

    #[test]
    fn alphabets_and_profiles() {
        let s = catalog(&CatalogName::S6_0).unwrap();
        assert_eq!(s.distinct_elements().unwrap(), [UnitValue::ONE, r(1, 3), r(2, 3)]);
        let h = catalog(&CatalogName::H1).unwrap();
        assert_eq!(h.distinct_elements().unwrap(), [UnitValue::ONE, r(1, 4), UnitValue::MINUS_ONE]);
        assert_eq!(catalog(&CatalogName::F6).unwrap().distinct_elements().unwrap().len(), 6);
        assert_eq!(s.element_row_profile(&r(1, 3)).unwrap(), [0, 2, 2, 2, 2, 2]);
        assert_eq!(h.element_row_profile(&r(1, 4)).unwrap(), [1; 6]);
        assert_eq!(s.element_row_profile(&UnitValue::MINUS_ONE).unwrap(), [0; 6]);
        let f = s.to_float();
        assert_eq!(f.distinct_elements().unwrap().len(), 3);
    }

    #[test]
    fn mixed_modes_rejected() {
        let f = UnitValue::float(1.0, 0.0).unwrap();
        assert_eq!(Matrix6::from_fn(|i, _| if i == 0 { f } else { UnitValue::ONE }), Err(Error::MixedMode));
    }

    #[test]
    fn scaling() {
        let s1 = catalog(&CatalogName::S6_1).unwrap();
        assert_eq!(s1.scale(&UnitValue::ONE), s1);
        let w = r(1, 3);
        let scaled = s1.scale(&w.neg());
        let mut expect: Vec<UnitValue> = [UnitValue::ONE, w.neg(), w.conj().neg()].iter().map(|v| v.mul(&w.neg())).collect();
        expect.sort_by_key(|v| v.turn());
        assert_eq!(scaled.distinct_elements().unwrap(), expect);
        let a = r(1, 5);
        let m = Matrix6::from_fn(|i, j| match (i + j) % 3 {
            0 => UnitValue::ONE,
            1 => a,
            _ => a.neg(),
        })
        .unwrap();
        let mut got = m.scale(&a.conj()).distinct_elements().unwrap();
        got.sort_by_key(|v| v.turn());
        let mut want = [a.conj(), UnitValue::ONE, UnitValue::MINUS_ONE];
        want.sort_by_key(|v| v.turn());
        assert_eq!(got, want);
    }
}
