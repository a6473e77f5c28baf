use std::collections::{BTreeMap, BTreeSet};

use chm_core::exactnum::Turn;
use chm_core::torus::*;

fn arr(s: Structure, n: &[u8]) -> CountArray {
    CountArray::new(s, n).unwrap()
}

fn nonsimple(c: &Classification) -> bool {
    matches!(c.label, CaseLabel::NonSimple(_))
}

/// Arrays summing to 6 with entries at most 2, by nested counting.
fn brute_count(len: u32) -> usize {
    (0..3u32.pow(len))
        .filter(|&code| {
            let mut c = code;
            let mut sum = 0;
            for _ in 0..len {
                sum += c % 3;
                c /= 3;
            }
            sum == 6
        })
        .count()
}

#[test]
fn enumeration_matches_brute_force() {
    for s in Structure::ALL {
        assert_eq!(enumerate_count_arrays(s).bounded.len(), brute_count(s.arity() as u32), "{s}");
    }
}

#[test]
fn conj_suite() {
    let all = classify_all(Structure::Conj).unwrap();
    assert_eq!(all.len(), 45);
    let got: BTreeSet<Vec<u8>> = all.iter().filter(|c| nonsimple(c)).map(|c| c.array.counts().to_vec()).collect();
    let mut want = BTreeSet::new();
    for n in EQ_ARRAYS {
        let a = arr(Structure::Conj, &n);
        want.insert(a.counts().to_vec());
        want.insert(a.conj().counts().to_vec());
    }
    assert_eq!(got, want);
    for c in &all {
        assert!(verify(&original_equation(&c.array), &c.solutions).unwrap(), "{}", c.array);
        if let Some(w) = c.witness {
            assert!(w.residual <= 1e-9);
        }
    }
}

#[test]
fn conj_labels_follow_pending_terms() {
    // Eq3 only has a = −1 as an original solution; its pending terms
    // 2a − a²... are real at non-simple points.
    let c = classify_array(&arr(Structure::Conj, &[1, 2, 1, 2, 0])).unwrap();
    assert_eq!(c.label, CaseLabel::NonSimple(Tag::Eq(3)));
    assert!(!c.original_nonsimple);
    assert_eq!(c.witness.unwrap().source, WitnessSource::Pending);
    assert_eq!(c.solutions.exact, [[Turn::HALF, Turn::ZERO]]);
}

/// Every original solution makes the (modified) pending terms real.
#[test]
fn containment() {
    for s in [Structure::Conj, Structure::NegConj] {
        let e = enumerate_count_arrays(s);
        for a in e.bounded.iter().chain(&e.rank1_excluded) {
            let f = original_equation(a);
            let im = pending_terms(a).terms.imaginary_part();
            if f.is_zero() || im.is_zero() {
                continue;
            }
            let mut probe = solve_unit_circle(&f).unwrap();
            probe.numeric.clear();
            assert!(verify(&im, &probe).unwrap(), "{} {}", s, a);
        }
    }
}

#[test]
fn negconj_suite() {
    let all = classify_all(Structure::NegConj).unwrap();
    let listed: BTreeSet<String> = all
        .iter()
        .filter(|c| matches!(c.label, CaseLabel::NonSimple(Tag::AppC(_))))
        .map(|c| original_equation(&c.array).to_string())
        .collect();
    let six: BTreeSet<String> = ["a+ā-2a²-2ā²", "-a-ā-2a²-2ā²", "2a+2ā-a²-ā²", "-2a-2ā-a²-ā²", "2+a+ā-a²-ā²", "2-a-ā-a²-ā²"]
        .into_iter()
        .map(String::from)
        .collect();
    assert_eq!(listed, six);
    for c in all.iter().filter(|c| nonsimple(c)) {
        assert!(c.original_nonsimple, "{}", c.array);
        assert!(c.witness.unwrap().residual <= 1e-9);
    }
    // Originals with exact non-simple solutions that the case analysis
    // misses, e.g. a² + ā² = 0 at a = e(1/8).
    let unlisted: Vec<&Classification> = all.iter().filter(|c| c.label == CaseLabel::NonSimple(Tag::Unlisted)).collect();
    let forms: BTreeSet<String> = unlisted.iter().map(|c| original_equation(&c.array).to_string()).collect();
    assert_eq!((unlisted.len(), forms.len()), (10, 7), "{forms:?}");
    let f = original_equation(&arr(Structure::NegConj, &[0, 0, 0, 1, 1, 2, 2]));
    assert!(f.eval_exact(Turn::new(1, 8).unwrap(), Turn::ZERO).unwrap().is_zero());
}

#[test]
fn negconj_pair_without_common_solution() {
    let x = arr(Structure::NegConj, &[0, 0, 2, 0, 2, 1, 1]);
    let y = arr(Structure::NegConj, &[2, 1, 0, 1, 0, 1, 1]);
    assert_eq!(common_solutions(&x, &y).unwrap(), CommonVerdict::NoCommon);
}

#[test]
fn generic_suite() {
    let all = classify_all(Structure::Generic).unwrap();
    let mut groups: BTreeMap<String, BTreeSet<CountArray>> = BTreeMap::new();
    for c in all.iter().filter(|c| nonsimple(c)) {
        let w = c.witness.expect("non-simple arrays carry a witness");
        assert!(w.residual <= 1e-9, "{}", c.array);
        assert!(!is_simple(Structure::Generic, &SolutionPoint::Numeric(w.angles)));
        let key = match c.label {
            CaseLabel::NonSimple(Tag::N { group, .. }) => format!("N.{group}"),
            CaseLabel::NonSimple(Tag::N5) => "N.5".into(),
            CaseLabel::NonSimple(Tag::Unlisted) => "unlisted".into(),
            l => panic!("unexpected label {l}"),
        };
        groups.entry(key).or_default().insert(c.array.canonical());
    }
    let sizes: Vec<(&str, usize)> = groups.iter().map(|(k, v)| (k.as_str(), v.len())).collect();
    assert_eq!(&sizes[..5], [("N.1", 6), ("N.2", 6), ("N.3", 6), ("N.4", 12), ("N.5", 1)]);
    for (g, list) in n_lists().iter().enumerate() {
        for n in list.iter() {
            let c = classify_array(&arr(Structure::Generic, n)).unwrap();
            assert!(nonsimple(&c), "N.{} {:?}", g + 1, n);
        }
    }
    // Free `b` with a = ω solves 2 + 2a + 2ā = 0 at non-simple points.
    let c = classify_array(&arr(Structure::Generic, &[2, 2, 2, 0, 0, 0, 0])).unwrap();
    assert_eq!(c.label, CaseLabel::NonSimple(Tag::Unlisted));
    let pt = [Turn::new(1, 3).unwrap(), Turn::new(1, 5).unwrap()];
    assert!(original_equation(&c.array).eval_exact(pt[0], pt[1]).unwrap().is_zero());
    assert!(!is_simple(Structure::Generic, &SolutionPoint::Exact(pt)));
}

#[test]
fn generic_pairs_with_common_solutions() {
    let mut cases: Vec<CountArray> = N1_ARRAYS.iter().map(|n| arr(Structure::Generic, n)).collect();
    cases.push(arr(Structure::Generic, &N5_ARRAYS[0]));
    let mut found = Vec::new();
    for i in 0..cases.len() {
        for j in i + 1..cases.len() {
            if let CommonVerdict::NonSimpleCommon(w) = common_solutions(&cases[i], &cases[j]).unwrap() {
                assert!(w.residual <= 1e-9);
                found.push((i + 1, j + 1));
            }
        }
    }
    assert_eq!(found, [(1, 4), (1, 5), (2, 3), (2, 6), (3, 6), (4, 5)]);
}

#[test]
fn real1_labels() {
    let all = classify_all(Structure::Real1).unwrap();
    assert!(all.iter().all(|c| !nonsimple(c)));
    let c = classify_array(&arr(Structure::Real1, &[2, 2, 1, 0, 1, 0])).unwrap();
    assert_eq!(c.solutions.exact.len(), 2);
    assert_eq!(classify_array(&arr(Structure::Real1, &[2, 2, 1, 1, 0, 0])).unwrap().label, CaseLabel::Unconstrained);
}

#[test]
fn rank1_arrays_are_flagged() {
    let e = enumerate_count_arrays(Structure::Conj);
    let c = classify_array(&e.rank1_excluded[0]).unwrap();
    assert!(c.rank1_excluded);
}
