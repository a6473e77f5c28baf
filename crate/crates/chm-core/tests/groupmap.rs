use chm_core::groupmap::*;
use chm_core::torus::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ZERO: ResidueRow = [0; 6];

fn neg(map: &GroupMap, r: ResidueRow) -> ResidueRow {
    let m = map.modulus();
    let mut v = r.map(|x| (m - x) % m);
    v.sort_unstable();
    v
}

#[test]
fn z5_third_row() {
    let z5 = GroupMap::z5();
    let x = [1, 2, 2, 3, 3, 4];
    let c = complete_rows(&z5, &[ZERO, x], &[x], &[x]).unwrap();
    assert_eq!(c.swaps, [(1, 2), (3, 4)]);
    assert_eq!(c.orbits.len(), 1);
    assert!(c.orbits[0].members.contains(&[3, 4, 3, 2, 1, 2]));
    for r in c.rows() {
        assert_eq!(residue_inner_product(&z5, &x, r).multiset, x);
    }
    assert_eq!(c.violations.len() + c.rows().count(), 180);
}

#[test]
fn z5_no_fourth_row() {
    let z5 = GroupMap::z5();
    for x in [[1, 2, 2, 3, 3, 4], [1, 1, 2, 3, 4, 4]] {
        let third = complete_rows(&z5, &[ZERO, x], &[x], &[x]).unwrap();
        let rows: Vec<ResidueRow> = third.rows().copied().collect();
        assert_eq!(rows.len(), 4);
        assert!(pairwise_admissibility(&z5, &rows, &[x]).unwrap().is_contradiction());
        for r in &rows {
            let fourth = complete_rows(&z5, &[ZERO, x, *r], &[x], &[x]).unwrap();
            assert!(fourth.is_contradiction());
            // The certificate re-checks: each rejected row fails where it says.
            for v in &fourth.violations {
                let against = [ZERO, x, *r][v.against];
                assert_eq!(residue_inner_product(&z5, &against, &v.row).multiset, v.got);
                assert_ne!(v.got, x);
            }
        }
    }
}

#[test]
fn z7_third_rows() {
    let z7 = GroupMap::z7();
    let cases: [(ResidueRow, (usize, usize), &[ResidueRow]); 3] = [
        ([0, 1, 2, 2, 3, 6], (2, 3), &[[2, 0, 2, 3, 6, 1], [6, 2, 2, 0, 1, 3], [1, 6, 2, 0, 2, 3]]),
        ([0, 1, 2, 3, 3, 5], (3, 4), &[[3, 2, 5, 3, 1, 0], [3, 2, 0, 5, 3, 1], [2, 5, 1, 0, 3, 3], [5, 3, 1, 0, 3, 2]]),
        ([0, 1, 1, 3, 4, 5], (1, 2), &[[1, 4, 1, 0, 5, 3], [1, 5, 1, 4, 0, 3], [3, 0, 1, 5, 1, 4], [4, 0, 1, 5, 3, 1]]),
    ];
    for (x, swap, listed) in cases {
        let targets = [x, neg(&z7, x)];
        let c = complete_rows(&z7, &[ZERO, x], &[x], &targets).unwrap();
        assert_eq!(c.swaps, [swap]);
        for row in listed {
            assert!(c.orbits.iter().any(|o| o.members.contains(row)), "{row:?}");
        }
        let rows: Vec<ResidueRow> = c.rows().copied().collect();
        let pairs = pairwise_admissibility(&z7, &rows, &targets).unwrap();
        assert!(pairs.is_contradiction(), "{x:?}");
        assert_eq!(pairs.failures.len(), rows.len() * (rows.len() - 1) / 2);
        assert_eq!(c.orbits.len(), 4);
    }
    // The first case has a fourth orbit beyond the three listed rows.
    let x = [0, 1, 2, 2, 3, 6];
    let c = complete_rows(&z7, &[ZERO, x], &[x], &[x, neg(&z7, x)]).unwrap();
    assert!(c.orbits.iter().any(|o| o.members.contains(&[2, 3, 1, 2, 6, 0])));
}

#[test]
fn z7_all_distinct_row_has_compatible_pairs() {
    // Residues alone do not settle this array; a pigeonhole step does.
    let z7 = GroupMap::z7();
    let x = [1, 2, 3, 4, 5, 6];
    let c = complete_rows(&z7, &[ZERO, x], &[x], &[x]).unwrap();
    let rows: Vec<ResidueRow> = c.rows().copied().collect();
    assert!(!pairwise_admissibility(&z7, &rows, &[x]).unwrap().is_contradiction());
}

#[test]
fn image_sums() {
    let z5 = GroupMap::z5();
    let sums = |conj: bool| -> Vec<u32> {
        EQ_ARRAYS
            .iter()
            .map(|n| {
                let a = CountArray::new(Structure::Conj, n).unwrap();
                image_sum(&z5, &if conj { a.conj() } else { a }).unwrap()
            })
            .collect()
    };
    assert_eq!(sums(false), [15, 15, 10, 12]);
    assert_eq!(sums(true), [15, 15, 15, 13]);
    let eq1 = CountArray::new(Structure::Conj, &EQ_ARRAYS[0]).unwrap();
    assert_eq!(row_multiset(&z5, &eq1).unwrap(), [1, 2, 2, 3, 3, 4]);
}

#[test]
fn z7_filter() {
    let g = |n: &[u8; 7]| CountArray::new(Structure::Generic, n).unwrap();
    let rest: Vec<CountArray> = [&N2_ARRAYS[..], &N3_ARRAYS, &N4_ARRAYS, &N5_ARRAYS].concat().iter().map(g).collect();
    let kept: Vec<Vec<u8>> = z7_sum_filter(&rest).unwrap().iter().map(|a| a.counts().to_vec()).collect();
    assert_eq!(kept, [[1, 1, 1, 0, 2, 1, 0], [1, 1, 0, 1, 1, 2, 0], [1, 2, 0, 1, 0, 1, 1], [0, 1, 1, 1, 1, 1, 1]]);
    let n1: Vec<CountArray> = N1_ARRAYS.iter().map(g).collect();
    assert_eq!(z7_sum_filter(&n1).unwrap().len(), 6);
    assert!(z7_sum_filter(&[]).unwrap().is_empty());
    let conj = CountArray::new(Structure::Conj, &EQ_ARRAYS[0]).unwrap();
    assert!(z7_sum_filter(&[conj]).is_err());
}

#[test]
fn ramsey() {
    let six = ramsey_check(6).unwrap();
    assert!(six.holds());
    assert_eq!(six.checked, 1 << 15);
    let five = ramsey_check(5).unwrap();
    let c = five.counterexample.unwrap();
    assert_eq!(monochromatic_triangle(&c), None);
    // Each colour class is a 5-cycle: every vertex has two edges of each colour.
    for v in 0..5 {
        let red = (0..5).filter(|&u| u != v && c.color(u, v)).count();
        assert_eq!(red, 2);
    }
    assert!(ramsey_check(9).is_err());
}

#[test]
fn ramsey_relabeling() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..100 {
        let c = EdgeColoring::from_bits(6, rng.gen_range(0..1 << 15));
        let t = monochromatic_triangle(&c).unwrap();
        let mut perm: Vec<usize> = (0..6).collect();
        for i in (1..6).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        let r = c.relabel(&perm);
        let img = t.map(|v| perm[v]);
        let x = r.color(img[0], img[1]);
        assert!(r.color(img[0], img[2]) == x && r.color(img[1], img[2]) == x);
        assert!(monochromatic_triangle(&r).is_some());
    }
}

#[test]
fn outward_coloring_of_generic_rows() {
    use chm_core::groupmap::Symbol as S;
    let (o, a, b) = (S::ONE, S::A, S::B);
    let rows = [[o, o, a, a, b, b], [a, b, o, b, o, a], [o, o, o, o, o, o]];
    // Rows 0,1 give ā + b̄ + a + ab̄ + b + bā, the self-conjugate N.5 form.
    let n5 = CountArray::new(Structure::Generic, &N5_ARRAYS[0]).unwrap();
    let c = outward_coloring(&rows[..2], &n5).unwrap();
    assert_eq!(c.colors, [false]);
    assert!(outward_coloring(&rows, &n5).is_err());
}

#[test]
fn residue_sum_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for map in [GroupMap::z5(), GroupMap::z7()] {
        let m = map.modulus();
        for _ in 0..10_000 {
            let x: ResidueRow = std::array::from_fn(|_| rng.gen_range(0..m));
            let sx: u32 = x.iter().map(|&v| v as u32).sum();
            let y: ResidueRow = loop {
                let y: ResidueRow = std::array::from_fn(|_| rng.gen_range(0..m));
                if y.iter().map(|&v| v as u32).sum::<u32>() % m as u32 == sx % m as u32 {
                    break y;
                }
            };
            let p = residue_inner_product(&map, &x, &y);
            assert_eq!(p.sum_mod, 0);
        }
    }
}
