//! Built-in matrices.

use crate::error::{Error, Result};
use crate::exactnum::{Turn, UnitValue, TOL};
use crate::matrix::Matrix6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CatalogName {
    /// The Tao matrix over {1, ω, ω²}.
    S6_0,
    /// The Tao pattern over {1, −ω, −ω²}.
    S6_1,
    /// The matrix over {1, −1, i} with i on the diagonal.
    H1,
    /// The two-parameter family with a rank-one 2×3 block.
    HAB(UnitValue, UnitValue),
    /// The Fourier matrix, entry (j, k) = e(jk/6).
    F6,
}

impl CatalogName {
    pub fn label(&self) -> &'static str {
        match self {
            CatalogName::S6_0 => "S6_0",
            CatalogName::S6_1 => "S6_1",
            CatalogName::H1 => "H1",
            CatalogName::HAB(..) => "HAB",
            CatalogName::F6 => "F6",
        }
    }
}

/// Powers of ω in the Tao matrix.
pub const TAO_EXPONENTS: [[u8; 6]; 6] =
    [[0, 0, 0, 0, 0, 0], [0, 0, 1, 1, 2, 2], [0, 1, 0, 2, 2, 1], [0, 1, 2, 0, 1, 2], [0, 2, 2, 1, 0, 1], [0, 2, 1, 2, 1, 0]];

fn omega(k: u8) -> UnitValue {
    UnitValue::Root(Turn::new(k as i64, 3).expect("nonzero"))
}

fn i_unit() -> UnitValue {
    UnitValue::Root(Turn::new(1, 4).expect("nonzero"))
}

fn check_unimodular(v: &UnitValue) -> Result<()> {
    match v {
        UnitValue::Root(_) => Ok(()),
        UnitValue::Float(z) if (z.norm_sqr() - 1.0).abs() <= TOL => Ok(()),
        UnitValue::Float(_) => Err(Error::NotUnimodular),
    }
}

pub fn catalog(name: &CatalogName) -> Result<Matrix6> {
    match name {
        CatalogName::S6_0 => Matrix6::from_fn(|i, j| omega(TAO_EXPONENTS[i][j])),
        CatalogName::S6_1 => Matrix6::from_fn(|i, j| match TAO_EXPONENTS[i][j] {
            0 => UnitValue::ONE,
            k => omega(k).neg(),
        }),
        CatalogName::H1 => {
            const S: [[i8; 6]; 6] = [
                [0, 1, 1, 1, 1, 1],
                [1, 0, 1, 1, -1, -1],
                [1, 1, 0, -1, 1, -1],
                [1, 1, -1, 0, -1, 1],
                [1, -1, 1, -1, 0, 1],
                [1, -1, -1, 1, 1, 0],
            ];
            Matrix6::from_fn(|i, j| match S[i][j] {
                0 => i_unit(),
                1 => UnitValue::ONE,
                _ => UnitValue::MINUS_ONE,
            })
        }
        CatalogName::HAB(alpha, beta) => {
            check_unimodular(alpha)?;
            check_unimodular(beta)?;
            if alpha.is_exact() != beta.is_exact() {
                return Err(Error::MixedMode);
            }
            let mut e = [[UnitValue::ONE; 6]; 6];
            for v in &mut e[1][3..] {
                *v = UnitValue::MINUS_ONE;
            }
            for j in 0..3 {
                let w = omega(j as u8);
                let w2 = omega((2 * j % 3) as u8);
                e[2][j] = w;
                e[3][j] = w;
                e[4][j] = w2;
                e[5][j] = w2;
                e[2][j + 3] = alpha.mul(&w);
                e[3][j + 3] = alpha.mul(&w).neg();
                e[4][j + 3] = beta.mul(&w2);
                e[5][j + 3] = beta.mul(&w2).neg();
            }
            if alpha.is_exact() {
                Matrix6::new(e)
            } else {
                Matrix6::new(e.map(|r| r.map(|v| UnitValue::Float(v.to_complex()))))
            }
        }
        CatalogName::F6 => Matrix6::from_fn(|j, k| UnitValue::Root(Turn::new((j * k) as i64, 6).expect("nonzero"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::root_of_unity;

    #[test]
    fn catalog_rows() {
        let w = omega(1);
        let w2 = omega(2);
        let one = UnitValue::ONE;
        let s = catalog(&CatalogName::S6_0).unwrap();
        assert_eq!(s.row(1), [one, one, w, w, w2, w2]);
        let h = catalog(&CatalogName::H1).unwrap();
        assert!((0..6).all(|k| h.get(k, k) == i_unit()));
        let s1 = catalog(&CatalogName::S6_1).unwrap();
        assert_eq!(s1.row(1), [one, one, w.neg(), w.neg(), w2.neg(), w2.neg()]);
    }

    #[test]
    fn two_parameter_family() {
        let a = root_of_unity(1, 5).unwrap();
        let b = root_of_unity(1, 7).unwrap();
        let m = catalog(&CatalogName::HAB(a, b)).unwrap();
        assert!(m.is_chm().unwrap());
        assert_eq!(m.get(2, 4), a.mul(&omega(1)));
        assert_eq!(m.get(5, 5), b.mul(&omega(1)).neg());
        let f = catalog(&CatalogName::HAB(UnitValue::float(0.6, 0.8).unwrap(), UnitValue::float(0.0, 1.0).unwrap())).unwrap();
        assert!(f.is_chm().unwrap());
        assert!(catalog(&CatalogName::HAB(UnitValue::Float(num_complex::Complex64::new(2.0, 0.0)), a)).is_err());
    }

    #[test]
    fn every_entry_is_catalogued_exactly() {
        for name in [CatalogName::S6_0, CatalogName::H1, CatalogName::F6] {
            let m = catalog(&name).unwrap();
            assert!(m.is_exact());
            assert!(m.is_chm().unwrap(), "{}", name.label());
            assert!(m.transpose().is_chm().unwrap());
            assert!(m.conj().is_chm().unwrap());
        }
    }

    #[test]
    fn s6_1_is_not_hadamard() {
        let m = catalog(&CatalogName::S6_1).unwrap();
        let p = m.row_inner_product(0, 1).unwrap().to_complex();
        assert!((p.re - 4.0).abs() < 1e-12 && p.im.abs() < 1e-12);
        assert!(!m.is_chm().unwrap());
    }
}
