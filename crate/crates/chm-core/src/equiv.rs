//! Equivalence and complex equivalence of order-6 matrices.
//!
//! `B` is complex equivalent to `A` when `B = P·A·Q` for monomial unitaries
//! `P` and `Q`. A certificate stores both sides as a permutation plus a phase
//! vector, acting as
//!
//! `B[i][j] = left.phases[i] · A[left.perm[i]][right.perm[j]] · right.phases[j]`.
//!
//! The search dephases `B` at `(0, 0)` and `A` at every anchor `(r, c)`. Two
//! matrices are complex equivalent iff for some anchor the dephased forms are
//! permutation equivalent with `r ↦ 0` and `c ↦ 0`, so the phases never need
//! to be guessed.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::error::{domain, Error, Result};
use crate::exactnum::{Turn, UnitValue};
use crate::matrix::{Matrix6, N};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EquivMode {
    Complex,
    Permutation,
}

/// A permutation followed by a diagonal phase.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Monomial {
    pub perm: [usize; N],
    pub phases: [UnitValue; N],
}

impl Monomial {
    pub const IDENTITY: Monomial = Monomial { perm: [0, 1, 2, 3, 4, 5], phases: [UnitValue::ONE; N] };

    pub fn is_permutation(&self) -> bool {
        let mut seen = [false; N];
        self.perm.iter().all(|&p| p < N && !core::mem::replace(&mut seen[p], true))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EquivalenceCertificate {
    pub left: Monomial,
    pub right: Monomial,
    pub mode: EquivMode,
}

impl EquivalenceCertificate {
    /// `left·A·right`.
    pub fn apply(&self, a: &Matrix6) -> Matrix6 {
        let (l, r) = (&self.left, &self.right);
        let e =
            core::array::from_fn(|i| core::array::from_fn(|j| l.phases[i].mul(&a.get(l.perm[i], r.perm[j])).mul(&r.phases[j])));
        Matrix6::new(e).expect("modes agree")
    }

    /// Re-checks the certificate entry by entry.
    pub fn verify(&self, a: &Matrix6, b: &Matrix6) -> bool {
        if !self.left.is_permutation() || !self.right.is_permutation() {
            return false;
        }
        if self.mode == EquivMode::Permutation && self.left.phases.iter().chain(&self.right.phases).any(|p| *p != UnitValue::ONE)
        {
            return false;
        }
        self.apply(a).approx_eq(b)
    }
}

/// Outcome of [`complex_equivalent`].
#[derive(Clone, Debug, PartialEq)]
pub enum Equivalence {
    Equivalent(Box<EquivalenceCertificate>),
    Inequivalent,
    /// Float inputs: the verdict was reached with tolerance comparisons and
    /// carries no certificate.
    Advisory {
        equivalent: bool,
    },
}

impl Equivalence {
    pub fn certificate(&self) -> Option<&EquivalenceCertificate> {
        match self {
            Equivalence::Equivalent(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_equivalent(&self) -> bool {
        matches!(self, Equivalence::Equivalent(_) | Equivalence::Advisory { equivalent: true })
    }
}

/// Multiset of quadruple products `M[i,j]·M[k,l]·conj(M[i,l])·conj(M[k,j])`
/// over `i < k`, `j < l`. Swapping `i` with `k` conjugates a product, so each
/// one is stored as the smaller of `t` and `1 − t` turns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fingerprint {
    Exact(Vec<Turn>),
    /// Float mode: turns rounded to multiples of 1e−6, advisory only.
    Rounded(Vec<i64>),
}

fn quad(m: &Matrix6, i: usize, j: usize, k: usize, l: usize) -> UnitValue {
    m.get(i, j).mul(&m.get(k, l)).mul(&m.get(i, l).conj()).mul(&m.get(k, j).conj())
}

pub fn fingerprint(m: &Matrix6) -> Fingerprint {
    let mut quads = Vec::with_capacity(225);
    for i in 0..N {
        for k in i + 1..N {
            for j in 0..N {
                for l in j + 1..N {
                    quads.push(quad(m, i, j, k, l));
                }
            }
        }
    }
    if m.is_exact() {
        let mut ts: Vec<Turn> = quads.iter().filter_map(|q| q.turn()).map(|t| t.min(t.neg())).collect();
        ts.sort();
        return Fingerprint::Exact(ts);
    }
    let mut rs: Vec<i64> = quads
        .iter()
        .map(|q| {
            let z = q.to_complex();
            let t = libm::fabs(libm::atan2(z.im, z.re)) / (2.0 * core::f64::consts::PI);
            libm::round(t * 1e6) as i64
        })
        .collect();
    rs.sort();
    Fingerprint::Rounded(rs)
}

/// `M[i][j]·conj(M[i][c])·conj(M[r][j])·M[r][c]`: row `r` and column `c` become ones.
fn dephase_at(m: &Matrix6, r: usize, c: usize) -> Matrix6 {
    let corner = m.get(r, c);
    let e = core::array::from_fn(|i| {
        core::array::from_fn(|j| {
            if i == r || j == c {
                // Exact ones even in float mode.
                match corner {
                    UnitValue::Root(_) => UnitValue::ONE,
                    UnitValue::Float(_) => UnitValue::Float(UnitValue::ONE.to_complex()),
                }
            } else {
                m.get(i, j).mul(&m.get(i, c).conj()).mul(&m.get(r, j).conj()).mul(&corner)
            }
        })
    });
    Matrix6::new(e).expect("modes agree")
}

/// Scales rows and columns so that row 0 and column 0 are all ones.
pub fn dephase(m: &Matrix6) -> Result<Matrix6> {
    if !m.is_chm()? {
        return domain("dephase needs a complex Hadamard matrix");
    }
    Ok(dephase_at(m, 0, 0))
}

/// Backtracking search for permutations with `a[sigma[i]][tau[j]] == b[i][j]`.
struct PermSearch<'a> {
    a: &'a Matrix6,
    b: &'a Matrix6,
    eq: fn(&UnitValue, &UnitValue) -> bool,
    row0: Option<usize>,
    col0: Option<usize>,
}

impl PermSearch<'_> {
    fn run(&self) -> Option<([usize; N], [usize; N])> {
        // cand[j]: bitmask of columns of `a` that column `j` of `b` may map to.
        let mut cand = [(1u8 << N) - 1; N];
        if let Some(c) = self.col0 {
            cand[0] = 1 << c;
            for m in &mut cand[1..] {
                *m &= !(1 << c);
            }
        }
        let mut sigma = [0; N];
        self.rows(0, 0, &mut sigma, cand)
    }

    fn rows(&self, i: usize, used: u8, sigma: &mut [usize; N], cand: [u8; N]) -> Option<([usize; N], [usize; N])> {
        if i == N {
            return matching(&cand).map(|tau| (*sigma, tau));
        }
        for s in 0..N {
            if used & (1 << s) != 0 || (i == 0 && self.row0.is_some_and(|r| r != s)) {
                continue;
            }
            let mut next = cand;
            for (j, m) in next.iter_mut().enumerate() {
                for k in 0..N {
                    if *m & (1 << k) != 0 && !(self.eq)(&self.a.get(s, k), &self.b.get(i, j)) {
                        *m &= !(1 << k);
                    }
                }
            }
            if matching(&next).is_none() {
                continue;
            }
            sigma[i] = s;
            if let Some(found) = self.rows(i + 1, used | (1 << s), sigma, next) {
                return Some(found);
            }
        }
        None
    }
}

/// Lexicographically first perfect matching `j ↦ tau[j]` with `tau[j] ∈ cand[j]`.
fn matching(cand: &[u8; N]) -> Option<[usize; N]> {
    fn go(j: usize, used: u8, cand: &[u8; N], tau: &mut [usize; N]) -> bool {
        if j == N {
            return true;
        }
        let mut free = cand[j] & !used;
        while free != 0 {
            let k = free.trailing_zeros() as usize;
            free &= free - 1;
            tau[j] = k;
            if go(j + 1, used | (1 << k), cand, tau) {
                return true;
            }
        }
        false
    }
    let mut tau = [0; N];
    go(0, 0, cand, &mut tau).then_some(tau)
}

fn exact_eq(x: &UnitValue, y: &UnitValue) -> bool {
    x == y
}

fn approx_eq(x: &UnitValue, y: &UnitValue) -> bool {
    x.approx_eq(y)
}

/// Phases making `B = P·A·Q` once the permutations are known.
fn phases_for(a: &Matrix6, b: &Matrix6, sigma: [usize; N], tau: [usize; N]) -> EquivalenceCertificate {
    let lp: [UnitValue; N] = core::array::from_fn(|i| b.get(i, 0).mul(&a.get(sigma[i], tau[0]).conj()));
    let rp = core::array::from_fn(|j| b.get(0, j).mul(&a.get(sigma[0], tau[j]).conj()).mul(&lp[0].conj()));
    EquivalenceCertificate {
        left: Monomial { perm: sigma, phases: lp },
        right: Monomial { perm: tau, phases: rp },
        mode: EquivMode::Complex,
    }
}

fn search_complex(a: &Matrix6, b: &Matrix6, eq: fn(&UnitValue, &UnitValue) -> bool) -> Option<([usize; N], [usize; N])> {
    let bd = dephase_at(b, 0, 0);
    for r in 0..N {
        for c in 0..N {
            let ad = dephase_at(a, r, c);
            let s = PermSearch { a: &ad, b: &bd, eq, row0: Some(r), col0: Some(c) };
            if let Some(found) = s.run() {
                return Some(found);
            }
        }
    }
    None
}

/// Decides whether `B = P·A·Q` for monomial `P`, `Q`.
///
/// Exact inputs give a verified certificate or a definitive `Inequivalent`.
/// Any float input makes the verdict advisory. The search itself never uses
/// orthogonality, so non-Hadamard inputs are accepted.
pub fn complex_equivalent(a: &Matrix6, b: &Matrix6) -> Equivalence {
    if !(a.is_exact() && b.is_exact()) {
        let (fa, fb) = (a.to_float(), b.to_float());
        return Equivalence::Advisory { equivalent: search_complex(&fa, &fb, approx_eq).is_some() };
    }
    if fingerprint(a) != fingerprint(b) {
        return Equivalence::Inequivalent;
    }
    match search_complex(a, b, exact_eq) {
        Some((sigma, tau)) => {
            let cert = phases_for(a, b, sigma, tau);
            debug_assert!(cert.verify(a, b));
            Equivalence::Equivalent(Box::new(cert))
        }
        None => Equivalence::Inequivalent,
    }
}

/// Decides whether `B` is obtained from `A` by permuting rows and columns.
pub fn permutation_equivalent(a: &Matrix6, b: &Matrix6) -> Result<Option<EquivalenceCertificate>> {
    if !(a.is_exact() && b.is_exact()) {
        return Err(Error::NeedsExact);
    }
    let s = PermSearch { a, b, eq: exact_eq, row0: None, col0: None };
    Ok(s.run().map(|(sigma, tau)| EquivalenceCertificate {
        left: Monomial { perm: sigma, phases: [UnitValue::ONE; N] },
        right: Monomial { perm: tau, phases: [UnitValue::ONE; N] },
        mode: EquivMode::Permutation,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog, CatalogName};
    use crate::exactnum::root_of_unity;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_monomial(rng: &mut ChaCha8Rng, den: u64) -> Monomial {
        let mut perm = [0, 1, 2, 3, 4, 5];
        perm.shuffle(rng);
        let phases = core::array::from_fn(|_| root_of_unity(rng.gen_range(0..den as i64), den).unwrap());
        Monomial { perm, phases }
    }

    #[test]
    fn dephasing() {
        let s = catalog(&CatalogName::S6_0).unwrap();
        assert_eq!(dephase(&s).unwrap(), s);
        let w = root_of_unity(1, 3).unwrap();
        assert_eq!(dephase(&s.scale(&w)).unwrap(), s);
        let h = dephase(&catalog(&CatalogName::H1).unwrap()).unwrap();
        assert!((0..N).all(|k| h.get(0, k) == UnitValue::ONE && h.get(k, 0) == UnitValue::ONE));
        assert!(h.is_chm().unwrap());
        assert_eq!(dephase(&h).unwrap(), h);
        let ones = Matrix6::from_fn(|_, _| UnitValue::ONE).unwrap();
        assert!(dephase(&ones).is_err());
    }

    #[test]
    fn fingerprints() {
        let s = catalog(&CatalogName::S6_0).unwrap();
        let h = catalog(&CatalogName::H1).unwrap();
        assert_ne!(fingerprint(&s), fingerprint(&h));
        let Fingerprint::Exact(v) = fingerprint(&s) else { panic!() };
        assert_eq!(v.len(), 225);
        // Every quadruple product of the Tao matrix is a cube root of unity.
        assert!(v.iter().all(|t| t.den() == 1 || t.den() == 3));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let c = EquivalenceCertificate {
                left: random_monomial(&mut rng, 12),
                right: random_monomial(&mut rng, 12),
                mode: EquivMode::Complex,
            };
            assert_eq!(fingerprint(&c.apply(&s)), fingerprint(&s));
        }
        assert!(matches!(fingerprint(&s.to_float()), Fingerprint::Rounded(_)));
    }

    #[test]
    fn s6_1_is_not_equivalent_to_tao() {
        // Complex equivalence preserves orthogonality, and S6(1)
        // has a non-orthogonal row pair.
        let s0 = catalog(&CatalogName::S6_0).unwrap();
        let s1 = catalog(&CatalogName::S6_1).unwrap();
        assert_ne!(fingerprint(&s1), fingerprint(&s0));
        assert_eq!(complex_equivalent(&s1, &s0), Equivalence::Inequivalent);
    }

    #[test]
    fn catalog_pairs() {
        let s = catalog(&CatalogName::S6_0).unwrap();
        let h = catalog(&CatalogName::H1).unwrap();
        assert_eq!(complex_equivalent(&h, &s), Equivalence::Inequivalent);
        let c = complex_equivalent(&s, &s);
        assert!(c.certificate().unwrap().verify(&s, &s));
        let f = catalog(&CatalogName::F6).unwrap();
        assert_eq!(complex_equivalent(&f, &s), Equivalence::Inequivalent);
    }

    #[test]
    fn random_monomial_images_are_recovered() {
        let a = root_of_unity(1, 5).unwrap();
        let b = root_of_unity(2, 7).unwrap();
        let names = [CatalogName::S6_0, CatalogName::S6_1, CatalogName::H1, CatalogName::HAB(a, b), CatalogName::F6];
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for name in &names {
            let m = catalog(name).unwrap();
            for _ in 0..20 {
                let pq = EquivalenceCertificate {
                    left: random_monomial(&mut rng, 24),
                    right: random_monomial(&mut rng, 24),
                    mode: EquivMode::Complex,
                };
                let target = pq.apply(&m);
                let cert = *complex_equivalent(&m, &target).certificate().expect("equivalent by construction");
                assert!(cert.verify(&m, &target));
                assert_eq!(fingerprint(&m), fingerprint(&target));
            }
        }
    }

    #[test]
    fn float_verdicts_are_advisory() {
        let s = catalog(&CatalogName::S6_0).unwrap();
        let h = catalog(&CatalogName::H1).unwrap();
        let w = root_of_unity(1, 3).unwrap();
        assert_eq!(complex_equivalent(&s.to_float(), &s.scale(&w)), Equivalence::Advisory { equivalent: true });
        assert_eq!(complex_equivalent(&s.to_float(), &h.to_float()), Equivalence::Advisory { equivalent: false });
    }

    #[test]
    fn permutations() {
        let s = catalog(&CatalogName::S6_0).unwrap();
        let swapped = s.permute(&[0, 1, 2, 3, 4, 5], &[0, 2, 1, 3, 4, 5]);
        let c = permutation_equivalent(&s, &swapped).unwrap().unwrap();
        assert!(c.verify(&s, &swapped));
        assert_eq!(c.mode, EquivMode::Permutation);
        let w = root_of_unity(1, 3).unwrap();
        assert_eq!(permutation_equivalent(&s, &s.scale(&w)).unwrap(), None);
        let h = catalog(&CatalogName::H1).unwrap();
        let c = permutation_equivalent(&h, &h.transpose()).unwrap().unwrap();
        assert_eq!(c.left, Monomial::IDENTITY);
        assert_eq!(c.right, Monomial::IDENTITY);
        assert!(permutation_equivalent(&s.to_float(), &s).is_err());
    }

    #[test]
    fn tampered_certificates_fail() {
        let s = catalog(&CatalogName::S6_0).unwrap();
        let mut c = *complex_equivalent(&s, &s).certificate().unwrap();
        c.left.phases[3] = c.left.phases[3].mul(&root_of_unity(1, 3).unwrap());
        assert!(!c.verify(&s, &s));
        let mut c = *complex_equivalent(&s, &s).certificate().unwrap();
        c.right.perm[1] = c.right.perm[0];
        assert!(!c.verify(&s, &s));
    }
}
