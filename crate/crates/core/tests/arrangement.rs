mod common;

use common::lattice;
use mckay_chambers::arrangement::{
    c_minus_witness, c_plus_witness, count_chambers_formula, slice_polygons, total_chambers_formula,
    ArrangementReport,
};
use mckay_chambers::{Arrangement, EnumOptions, Kind, Location, StabilityParameter};
use num_bigint::BigInt;
use proptest::prelude::*;

#[test]
fn global_count_is_weyl_multiple() {
    for (k, r, n) in [(Kind::A, 1, 1), (Kind::A, 1, 2), (Kind::A, 1, 3), (Kind::A, 2, 2), (Kind::Trivial, 0, 2)] {
        let l = lattice(k, r, n);
        let arr = Arrangement::new(&l);
        let all = arr.enumerate_all_chambers(EnumOptions::default()).unwrap();
        assert_eq!(BigInt::from(all.len()), total_chambers_formula(&l).unwrap(), "{k}{r} n={n}");
        let in_f = all.iter().filter(|c| c.in_f).count();
        assert_eq!(BigInt::from(in_f), count_chambers_formula(&l).unwrap());
    }
}

#[test]
fn type_a1_has_n_chambers_in_f() {
    // On the slice theta(delta) = 1 the walls of A_1 are the points 1..n-1 of a half line.
    for n in 1..=7 {
        let arr = Arrangement::new(&lattice(Kind::A, 1, n));
        assert_eq!(arr.enumerate_chambers_in_f(EnumOptions::default()).unwrap().len() as i64, n);
    }
}

#[test]
fn parallel_enumeration_is_identical() {
    let arr = Arrangement::new(&lattice(Kind::A, 2, 3));
    let seq = arr.enumerate_chambers_in_f(EnumOptions::default()).unwrap();
    let par = arr.enumerate_chambers_in_f(EnumOptions { jobs: 4, ..Default::default() }).unwrap();
    assert_eq!(seq, par);
}

#[test]
fn named_chambers_distinct_for_n_at_least_two() {
    for n in 1..=4 {
        let l = lattice(Kind::A, 2, n);
        let arr = Arrangement::new(&l);
        let m = arr.chamber_of(&c_minus_witness(&l)).unwrap();
        let p = arr.chamber_of(&c_plus_witness(&l)).unwrap();
        assert!(m.in_f && p.in_f);
        assert_eq!(m.signs == p.signs, n == 1);
    }
}

#[test]
fn faces_have_consistent_witnesses() {
    let arr = Arrangement::new(&lattice(Kind::A, 1, 3));
    let faces = arr.enumerate_faces(EnumOptions::default()).unwrap();
    // Chambers, rays and the origin of a central arrangement of 6 lines in the plane.
    assert_eq!(faces.len(), 12 + 12 + 1);
    for f in &faces {
        assert_eq!(arr.signs(&f.witness), f.signs);
    }
}

#[test]
fn plot_a2_n1_single_region() {
    let arr = Arrangement::new(&lattice(Kind::A, 2, 1));
    let polys = slice_polygons(&arr, EnumOptions::default()).unwrap();
    assert_eq!(polys.len(), 1);
    assert_eq!(polys[0].label.as_deref(), Some("C-=C+"));
    assert!(slice_polygons(&Arrangement::new(&lattice(Kind::A, 1, 2)), EnumOptions::default()).is_err());
}

#[test]
fn report_round_trips() {
    let arr = Arrangement::new(&lattice(Kind::A, 2, 2));
    let rep = arr.report(arr.enumerate_chambers_in_f(EnumOptions::default()).unwrap());
    let s = serde_json::to_string(&rep).unwrap();
    let back: ArrangementReport = serde_json::from_str(&s).unwrap();
    assert_eq!(back, rep);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn locate_agrees_with_signs(x in prop::collection::vec(-20i64..=20, 3)) {
        let l = lattice(Kind::A, 2, 3);
        let arr = Arrangement::new(&l);
        let theta = StabilityParameter::from_finite_ints(&l, &x).unwrap();
        prop_assert!(theta.eval(&l.v()) == BigInt::from(0));
        match arr.locate(&theta) {
            Location::Chamber(c) => {
                prop_assert!(c.signs.iter().all(|&s| s != 0));
                prop_assert_eq!(&c.signs, &arr.signs(&theta));
                prop_assert_eq!(c.in_f, theta.in_open_f(&l));
            }
            Location::OnWall(ws) => {
                prop_assert_eq!(ws.len(), arr.zero_set(&theta).len());
                prop_assert!(!ws.is_empty());
            }
        }
    }

    #[test]
    fn normalisation_is_ray_invariant(x in prop::collection::vec(-9i64..=9, 3), s in 1i64..=7) {
        let l = lattice(Kind::A, 2, 2);
        let a = StabilityParameter::from_finite_ints(&l, &x).unwrap();
        let scaled: Vec<i64> = x.iter().map(|v| v * s).collect();
        let b = StabilityParameter::from_finite_ints(&l, &scaled).unwrap();
        prop_assert_eq!(a, b);
    }
}
