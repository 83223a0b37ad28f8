mod common;

use common::{kac_roots_below, lattice, p_of};
use mckay_chambers::{build_root_system, DimVector, Kind};
use proptest::prelude::*;

#[test]
fn roots_below_v_match_kac_criterion() {
    let cases = [
        (Kind::A, 1, 1),
        (Kind::A, 1, 3),
        (Kind::A, 2, 2),
        (Kind::A, 3, 2),
        (Kind::D, 4, 1),
        (Kind::D, 4, 2),
        (Kind::D, 5, 1),
        (Kind::E, 6, 1),
        (Kind::E, 7, 1),
        (Kind::Trivial, 0, 3),
    ];
    for (k, r, n) in cases {
        let l = lattice(k, r, n);
        let got: Vec<Vec<i64>> = l.roots_below_v().unwrap().into_iter().map(|g| g.0).collect();
        let mut sorted = got.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), got.len(), "{k}{r} n={n}: duplicates");
        let expect: Vec<Vec<i64>> = kac_roots_below(&l, &l.v().0).into_iter().collect();
        assert_eq!(sorted, expect, "{k}{r} n={n}");
    }
}

#[test]
fn v_is_an_imaginary_root_with_p_equal_n() {
    for (k, r) in [(Kind::A, 1), (Kind::A, 4), (Kind::D, 4), (Kind::E, 6), (Kind::E, 8), (Kind::Trivial, 0)] {
        for n in 1..=4 {
            let l = lattice(k, r, n);
            assert_eq!(l.p_form(&l.v()), n);
            assert_eq!(p_of(&l.cartan_framed, &l.v().0), n);
            assert!(l.roots_below_v().unwrap().contains(&l.v()));
        }
    }
}

#[test]
fn a1_n2_contains_framed_imaginary_root() {
    let l = lattice(Kind::A, 1, 2);
    let roots = l.roots_below_v().unwrap();
    assert!(roots.contains(&DimVector(vec![1, 2, 2])));
    assert!(roots.contains(&DimVector(vec![0, 2, 2])));
    assert!(!roots.contains(&DimVector(vec![1, 0, 1])));
}

#[test]
fn e8_affine_data() {
    let d = build_root_system(Kind::E, 8).unwrap();
    assert_eq!(d.positive_roots.len(), 120);
    assert_eq!(d.coxeter_number, 30);
    assert_eq!(d.degrees, vec![2, 8, 12, 14, 18, 20, 24, 30]);
    assert_eq!(d.delta.iter().sum::<i64>(), 30);
}

fn kinds() -> impl Strategy<Value = (Kind, usize)> {
    prop_oneof![
        (1usize..=7).prop_map(|r| (Kind::A, r)),
        (4usize..=7).prop_map(|r| (Kind::D, r)),
        (6usize..=8).prop_map(|r| (Kind::E, r)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn affine_marks_span_the_radical((k, r) in kinds()) {
        let d = build_root_system(k, r).unwrap();
        for row in &d.cartan_affine {
            prop_assert_eq!(row.iter().zip(&d.delta).map(|(a, b)| a * b).sum::<i64>(), 0);
        }
        prop_assert_eq!(d.delta[0], 1);
        prop_assert_eq!(&d.delta[1..], d.highest_root.as_slice());
        // Sum of exponents is the number of positive roots, degrees are exponents + 1.
        prop_assert_eq!(d.exponents.iter().sum::<i64>() as usize, d.positive_roots.len());
        prop_assert_eq!(d.exponents.iter().map(|e| e + 1).collect::<Vec<_>>(), d.degrees.clone());
        prop_assert_eq!(d.positive_roots.len() as i64 * 2, r as i64 * d.coxeter_number);
        prop_assert_eq!(d.degrees.iter().map(|&x| x as u128).product::<u128>(), d.weyl_order());
    }

    #[test]
    fn iota_is_a_diagram_involution((k, r) in kinds()) {
        let d = build_root_system(k, r).unwrap();
        for i in 0..=r {
            prop_assert_eq!(d.iota[d.iota[i]], i);
            prop_assert_eq!(d.delta[d.iota[i]], d.delta[i]);
            for j in 0..=r {
                prop_assert_eq!(d.cartan_affine[d.iota[i]][d.iota[j]], d.cartan_affine[i][j]);
            }
        }
        prop_assert_eq!(d.iota[0], 0);
    }

    #[test]
    fn finite_roots_have_norm_two((k, r) in kinds(), pick in 0usize..1000) {
        let d = build_root_system(k, r).unwrap();
        let a = &d.positive_roots[pick % d.positive_roots.len()];
        prop_assert_eq!(d.finite_pairing(a, a), 2);
    }
}
