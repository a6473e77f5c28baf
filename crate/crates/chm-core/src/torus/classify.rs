use alloc::vec::Vec;
use core::fmt;

use super::laurent::LaurentPoly;
use super::plane::{scan_curve, torus_points, Part};
use super::solve::{int_coeffs, is_constant, poly_of, Completeness, SolutionPoint, SolutionSet};
use super::{
    describe, enumerate_count_arrays, n_lists, original_equation, pending_terms, solve_unit_circle, CountArray, Pending,
    Structure, APPC_FORMS, EQ_ARRAYS,
};
use crate::error::{Error, Result};
use crate::poly::unit_circle_roots;

/// Position of an array in a reference list, one-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tag {
    Eq(u8),
    EqPrime(u8),
    N {
        group: u8,
        index: u8,
    },
    N5,
    AppC(u8),
    /// Non-simple but absent from the reference lists.
    Unlisted,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tag::Eq(i) => write!(f, "Eq{i}"),
            Tag::EqPrime(i) => write!(f, "Eq{i}'"),
            Tag::N { group, index } => write!(f, "N.{group}.{index}"),
            Tag::N5 => write!(f, "N.5"),
            Tag::AppC(i) => write!(f, "AppC.{i}"),
            Tag::Unlisted => write!(f, "unlisted"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseLabel {
    SimpleOnly,
    NoSolution,
    NonSimple(Tag),
    /// The original equation vanishes identically.
    Unconstrained,
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseLabel::SimpleOnly => write!(f, "SimpleOnly"),
            CaseLabel::NoSolution => write!(f, "NoSolution"),
            CaseLabel::NonSimple(t) => write!(f, "NonSimple({t})"),
            CaseLabel::Unconstrained => write!(f, "Unconstrained"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessSource {
    /// A non-simple solution of the original equation.
    Original,
    /// A non-simple point at which the pending terms are real.
    Pending,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Witness {
    pub source: WitnessSource,
    /// `(θ1, θ2)`; `θ2 = 0` for one variable.
    pub angles: [f64; 2],
    /// `|f|` at the point for the equation the source names.
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub array: CountArray,
    pub label: CaseLabel,
    /// Solutions of the original equation.
    pub solutions: SolutionSet,
    pub pending: Pending,
    pub witness: Option<Witness>,
    /// The pending terms are real at some non-simple point.
    pub pending_nonsimple: bool,
    /// The original has a non-simple solution (found, for curves).
    pub original_nonsimple: bool,
    pub rank1_excluded: bool,
}

fn nonsimple_numeric(s: Structure, th: [f64; 2]) -> bool {
    !super::is_simple(s, &SolutionPoint::Numeric(th))
}

fn witness(p: &LaurentPoly, source: WitnessSource, angles: [f64; 2]) -> Witness {
    Witness { source, angles, residual: p.eval_angles(angles[0], angles[1]).norm() }
}

fn tag_in<const K: usize>(array: &CountArray, list: &[[u8; K]]) -> Option<u8> {
    let canon = array.canonical();
    list.iter().position(|n| CountArray::new(array.structure(), n).is_ok_and(|a| a.canonical() == canon)).map(|i| i as u8 + 1)
}

/// Reference-list tag of an array, up to conjugation.
pub(crate) fn reference_tag(array: &CountArray) -> Tag {
    match array.structure() {
        Structure::Conj => {
            let i = EQ_ARRAYS.iter().position(|n| n[..] == *array.counts());
            match (i, tag_in(array, &EQ_ARRAYS)) {
                (Some(i), _) => Tag::Eq(i as u8 + 1),
                (None, Some(i)) => Tag::EqPrime(i),
                (None, None) => Tag::Unlisted,
            }
        }
        Structure::NegConj => {
            let n = |i| array.n(i);
            let key = (n(1) as u8, (n(2) - n(3)) as i8, n(6) as u8);
            let same = n(2) - n(3) == n(4) - n(5) && n(6) == n(7);
            match APPC_FORMS.iter().position(|f| *f == key) {
                Some(i) if same => Tag::AppC(i as u8 + 1),
                _ => Tag::Unlisted,
            }
        }
        Structure::Generic => {
            for (g, list) in n_lists().iter().enumerate() {
                if let Some(i) = tag_in(array, list) {
                    return if g == 4 { Tag::N5 } else { Tag::N { group: g as u8 + 1, index: i } };
                }
            }
            Tag::Unlisted
        }
        Structure::Real1 => Tag::Unlisted,
    }
}

/// Solutions of the original equation and a non-simple one if found.
fn solve_original(array: &CountArray, f: &LaurentPoly) -> Result<(SolutionSet, Option<[f64; 2]>)> {
    let s = array.structure();
    if s.vars() == 1 {
        let set = solve_unit_circle(f)?;
        let bad = set.first_nonsimple(s);
        return Ok((set, bad));
    }
    let mut set = SolutionSet::empty(2);
    if !f.is_self_conjugate() {
        if let Some(points) = torus_points(f, &f.conj())? {
            for p in points {
                set.push_plane(p);
            }
            let bad = set.first_nonsimple(s);
            return Ok((set, bad));
        }
    }
    // A curve: sample it, keeping one point and one non-simple point.
    set.completeness = Completeness::WitnessOnly;
    let scan = scan_curve(f, Part::Re, |t| f.eval_angles(t[0], t[1]).norm() <= 1e-9 && nonsimple_numeric(s, t));
    let first = if f.is_self_conjugate() { scan.first } else { scan.accepted };
    set.numeric.extend(first);
    if let Some(t) = scan.accepted {
        if Some(t) != first {
            set.numeric.push(t);
        }
    }
    Ok((set, scan.accepted))
}

/// A non-simple point where the pending terms are real.
fn pending_witness(array: &CountArray, pending: &Pending) -> Result<Option<[f64; 2]>> {
    let s = array.structure();
    if pending.amount == 0 {
        return Ok(None);
    }
    if s.vars() == 1 {
        let set = solve_unit_circle(&pending.terms.imaginary_part())?;
        return Ok(set.first_nonsimple(s));
    }
    Ok(scan_curve(&pending.terms, Part::Im, |t| nonsimple_numeric(s, t)).accepted)
}

fn conj_label(has_nonsimple: bool, solutions: &SolutionSet, array: &CountArray) -> CaseLabel {
    if has_nonsimple {
        CaseLabel::NonSimple(reference_tag(array))
    } else if solutions.is_empty() {
        CaseLabel::NoSolution
    } else {
        CaseLabel::SimpleOnly
    }
}

/// Whether the structural case analysis over `{1, a, −ā}` leaves a
/// non-simple original: the original must be self-conjugate,
/// `n1 + d(a+ā) − m(a²+ā²)`, of one of six shapes.
fn negconj_rule(array: &CountArray) -> bool {
    matches!(reference_tag(array), Tag::AppC(_))
}

/// The structural case analysis over `{1, a, b}`, by partition type of the
/// counts and the imbalance of the conjugate pairs `(n2,n3), (n4,n5), (n6,n7)`.
fn generic_rule(array: &CountArray) -> bool {
    let n: Vec<i64> = (1..=7).map(|i| array.n(i)).collect();
    let pairs = [(n[1], n[2]), (n[3], n[4]), (n[5], n[6])];
    let diffs: Vec<i64> = pairs.iter().map(|(x, y)| (x - y).abs()).collect();
    let amount: i64 = diffs.iter().sum();
    let mut ty: Vec<i64> = n.iter().copied().filter(|&x| x > 0).collect();
    ty.sort_unstable_by(|a, b| b.cmp(a));
    // Equalities under which the other two pairs cancel, keyed by the pair
    // carrying the leftover imbalance.
    let exception = |k: usize| match k {
        0 => n[3] == n[6] && n[4] == n[5],
        1 => n[1] == n[5] && n[2] == n[6],
        _ => n[1] == n[3] && n[2] == n[4],
    };
    let holding = |v: i64| pairs.iter().position(|&(x, y)| x == v || y == v);
    match ty.as_slice() {
        [2, 2, 1, 1] if amount == 0 => true,
        [2, 2, 1, 1] if amount == 4 && n[0] == 2 => holding(2).is_some_and(|k| !exception(k)),
        [2, 2, 1, 1] if amount == 5 && n[0] == 1 => holding(1).is_some_and(|k| !exception(k)),
        [2, 1, 1, 1, 1] if amount == 3 => {
            let mut nz: Vec<i64> = diffs.iter().copied().filter(|&d| d > 0).collect();
            nz.sort_unstable();
            nz == [1, 2]
        }
        [1, 1, 1, 1, 1, 1] => amount == 0,
        _ => false,
    }
}

/// Labels one array. Over `{1, a, ā}` the label follows the pending terms,
/// whose solutions contain those of the original. Over `{1, a, −ā}` and
/// `{1, a, b}` the structural case analysis assigns the reference tags, and
/// any array whose original has a non-simple solution outside it is labeled
/// [`Tag::Unlisted`].
pub fn classify_array(array: &CountArray) -> Result<Classification> {
    let s = array.structure();
    let f = original_equation(array);
    let pending = pending_terms(array);
    let rank1_excluded = array.rank1_excluded();
    if f.is_zero() {
        return Ok(Classification {
            array: array.clone(),
            label: CaseLabel::Unconstrained,
            solutions: SolutionSet::empty(s.vars()),
            pending,
            witness: None,
            pending_nonsimple: false,
            original_nonsimple: false,
            rank1_excluded,
        });
    }
    let (solutions, bad) = solve_original(array, &f)?;
    let original_nonsimple = bad.is_some();
    let (label, pending_nonsimple, wit) = match s {
        Structure::Real1 => {
            let label = if solutions.is_empty() { CaseLabel::NoSolution } else { CaseLabel::SimpleOnly };
            (label, false, None)
        }
        Structure::Conj => {
            let pw = if pending.amount == 0 { bad } else { pending_witness(array, &pending)? };
            let wit = match (bad, pw) {
                (Some(t), _) => Some(witness(&f, WitnessSource::Original, t)),
                (None, Some(t)) => Some(witness(&pending.terms.imaginary_part(), WitnessSource::Pending, t)),
                _ => None,
            };
            (conj_label(pw.is_some(), &solutions, array), pw.is_some(), wit)
        }
        Structure::NegConj | Structure::Generic => {
            let rule = if s == Structure::NegConj { negconj_rule(array) } else { generic_rule(array) };
            let pw = if !rule {
                None
            } else if pending.amount == 0 {
                bad
            } else {
                pending_witness(array, &pending)?
            };
            let wit = match (bad, pw) {
                (Some(t), _) => Some(witness(&f, WitnessSource::Original, t)),
                (None, Some(t)) => Some(witness(&pending.terms.imaginary_part(), WitnessSource::Pending, t)),
                _ => None,
            };
            // Non-simple solutions the case analysis does not predict still
            // make the array non-simple, under the unlisted tag.
            let label = match (rule, original_nonsimple) {
                (true, _) => CaseLabel::NonSimple(reference_tag(array)),
                (false, true) => CaseLabel::NonSimple(Tag::Unlisted),
                (false, false) => conj_label(false, &solutions, array),
            };
            (label, pw.is_some(), wit)
        }
    };
    Ok(Classification {
        array: array.clone(),
        label,
        solutions,
        pending,
        witness: wit,
        pending_nonsimple,
        original_nonsimple,
        rank1_excluded,
    })
}

/// Classifies every array with entries at most 2, in enumeration order.
pub fn classify_all(structure: Structure) -> Result<Vec<Classification>> {
    enumerate_count_arrays(structure).bounded.iter().map(classify_array).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub enum CommonVerdict {
    NoCommon,
    SimpleOnlyCommon,
    NonSimpleCommon(Witness),
}

impl fmt::Display for CommonVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CommonVerdict::NoCommon => write!(f, "NoCommon"),
            CommonVerdict::SimpleOnlyCommon => write!(f, "SimpleOnlyCommon"),
            CommonVerdict::NonSimpleCommon(w) => write!(f, "NonSimpleCommon({:.9}, {:.9})", w.angles[0], w.angles[1]),
        }
    }
}

fn verdict(s: Structure, set: &SolutionSet, f: &LaurentPoly, g: &LaurentPoly) -> CommonVerdict {
    match set.first_nonsimple(s) {
        Some(t) => {
            let r = f.eval_angles(t[0], t[1]).norm().max(g.eval_angles(t[0], t[1]).norm());
            CommonVerdict::NonSimpleCommon(Witness { source: WitnessSource::Original, angles: t, residual: r })
        }
        None if set.is_empty() => CommonVerdict::NoCommon,
        None => CommonVerdict::SimpleOnlyCommon,
    }
}

/// Whether two original equations share a solution, and of which kind.
pub fn common_solutions(a: &CountArray, b: &CountArray) -> Result<CommonVerdict> {
    if a.structure() != b.structure() {
        return Err(Error::Domain(alloc::format!("{} and {} have different structures", describe(a), describe(b))));
    }
    let s = a.structure();
    let (f, g) = (original_equation(a), original_equation(b));
    if f == g || f == g.conj() {
        return Err(Error::Domain(alloc::format!(
            "{} and {} give identical or conjugate equations; use the residue-map analysis",
            describe(a),
            describe(b)
        )));
    }
    if s.vars() == 1 {
        let h = poly_of(&f)?.gcd(&poly_of(&g)?);
        if is_constant(&h) {
            return Ok(CommonVerdict::NoCommon);
        }
        let roots = unit_circle_roots(&int_coeffs(&h))?;
        let mut set = SolutionSet::empty(1);
        for (d, _) in roots.cyclotomic {
            for k in 0..d {
                if num_integer::Integer::gcd(&k, &d) == 1 {
                    set.exact.push([crate::exactnum::Turn::new(k as i64, d)?, crate::exactnum::Turn::ZERO]);
                }
            }
        }
        set.algebraic = roots.cosines;
        return Ok(verdict(s, &set, &f, &g));
    }
    match torus_points(&f, &g)? {
        Some(points) => {
            let mut set = SolutionSet::empty(2);
            for p in points {
                set.push_plane(p);
            }
            Ok(verdict(s, &set, &f, &g))
        }
        None => {
            // Shared curve component: look for any common point along it.
            let mut any = false;
            let scan = scan_curve(&f, Part::Re, |t| {
                let ok = f.eval_angles(t[0], t[1]).norm() <= 1e-9 && g.eval_angles(t[0], t[1]).norm() <= 1e-9;
                any |= ok;
                ok && nonsimple_numeric(s, t)
            });
            Ok(match scan.accepted {
                Some(t) => CommonVerdict::NonSimpleCommon(witness(&f, WitnessSource::Original, t)),
                None if any => CommonVerdict::SimpleOnlyCommon,
                None => CommonVerdict::NoCommon,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arr(s: Structure, n: &[u8]) -> CountArray {
        CountArray::new(s, n).unwrap()
    }

    #[test]
    fn conj_examples() {
        let c = classify_array(&arr(Structure::Conj, &[0, 1, 1, 2, 2])).unwrap();
        assert_eq!(c.label, CaseLabel::NonSimple(Tag::Eq(1)));
        assert!(c.original_nonsimple);
        assert_eq!(classify_array(&arr(Structure::Conj, &[2, 2, 2, 0, 0])).unwrap().label, CaseLabel::SimpleOnly);
        assert_eq!(classify_array(&arr(Structure::Conj, &[1, 1, 1, 1, 2])).unwrap().label, CaseLabel::NoSolution);
        let c = classify_array(&arr(Structure::Conj, &[1, 1, 2, 0, 2])).unwrap();
        assert_eq!(c.label, CaseLabel::NonSimple(Tag::EqPrime(3)));
    }

    #[test]
    fn real1_zero_original() {
        let c = classify_array(&arr(Structure::Real1, &[1, 1, 1, 1, 1, 1])).unwrap();
        assert_eq!(c.label, CaseLabel::Unconstrained);
    }

    #[test]
    fn common_examples() {
        let eq1 = arr(Structure::Conj, &[0, 1, 1, 2, 2]);
        let eq2 = arr(Structure::Conj, &[0, 2, 2, 1, 1]);
        assert_eq!(common_solutions(&eq1, &eq2).unwrap(), CommonVerdict::NoCommon);
        assert!(matches!(common_solutions(&eq1, &eq1), Err(Error::Domain(_))));
        let x = arr(Structure::NegConj, &[0, 0, 2, 0, 2, 1, 1]);
        let y = arr(Structure::NegConj, &[2, 1, 0, 1, 0, 1, 1]);
        assert_eq!(common_solutions(&x, &y).unwrap(), CommonVerdict::NoCommon);
        let n11 = arr(Structure::Generic, &[0, 1, 1, 2, 2, 0, 0]);
        let n14 = arr(Structure::Generic, &[0, 0, 0, 1, 1, 2, 2]);
        let CommonVerdict::NonSimpleCommon(w) = common_solutions(&n11, &n14).unwrap() else {
            panic!("expected a non-simple common solution")
        };
        assert!(w.residual <= 1e-9);
    }
}
