mod common;

use common::PolyField;
use proptest::prelude::*;
use ranklab::fields::{make_tower, FieldTower, Level};
use ranklab::fqlinalg::{inverse, Mat};
use ranklab::subspaces::FqSubspace;
use std::sync::Arc;

fn towers() -> Vec<Arc<FieldTower>> {
    [(2, 4, 1), (2, 3, 2), (3, 2, 1), (3, 4, 1), (5, 2, 1), (2, 6, 1)]
        .iter()
        .map(|&(p, n, t)| make_tower(p, 1, n, t).unwrap())
        .collect()
}

fn tower_and_elems() -> impl Strategy<Value = (Arc<FieldTower>, u32, u32, u32)> {
    (0..towers().len()).prop_flat_map(|i| {
        let t = towers()[i].clone();
        let (qn, q) = (t.mid().order(), t.q());
        (Just(t), 0..qn, 0..qn, 0..q)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn mid_arithmetic_matches_polynomial_oracle((t, a, b, _c) in tower_and_elems()) {
        let o = PolyField::mid_of(&t);
        let f = t.mid();
        prop_assert_eq!(f.add(a, b), o.add(a, b));
        prop_assert_eq!(f.mul(a, b), o.mul(a, b));
        if a != 0 {
            prop_assert_eq!(o.mul(a, f.inv(a)), 1);
        }
    }

    #[test]
    fn trace_is_linear_and_lands_in_base((t, a, b, c) in tower_and_elems()) {
        let f = t.mid();
        let lhs = t.trace_mid(f.add(a, f.mul(c, b)));
        let rhs = t.base().add(t.trace_mid(a), t.base().mul(c, t.trace_mid(b)));
        prop_assert_eq!(lhs, rhs);
        prop_assert!(t.trace_mid(a) < t.q());
        prop_assert_eq!(t.trace_mid(a), PolyField::mid_of(&t).trace(a));
    }

    #[test]
    fn frobenius_is_a_field_automorphism((t, a, b, _c) in tower_and_elems()) {
        let f = t.mid();
        let fr = |x| t.frobenius(Level::Mid, x, 1);
        prop_assert_eq!(fr(f.add(a, b)), f.add(fr(a), fr(b)));
        prop_assert_eq!(fr(f.mul(a, b)), f.mul(fr(a), fr(b)));
        prop_assert_eq!(t.frobenius(Level::Mid, a, t.n()), a);
        prop_assert_eq!(fr(a), PolyField::mid_of(&t).frob(a));
    }

    #[test]
    fn norm_is_multiplicative_into_base((t, a, b, _c) in tower_and_elems()) {
        let f = t.mid();
        prop_assert_eq!(t.norm_mid(f.mul(a, b)), t.base().mul(t.norm_mid(a), t.norm_mid(b)));
        prop_assert!(t.norm_mid(a) < t.q());
    }

    #[test]
    fn minimal_polynomial_vanishes((t, a, _b, _c) in tower_and_elems()) {
        let o = PolyField::mid_of(&t);
        let mp = t.minimal_polynomial(Level::Mid, a);
        prop_assert_eq!(*mp.last().unwrap(), 1);
        prop_assert_eq!(t.n() % (mp.len() - 1), 0);
        let val = mp.iter().rev().fold(0, |acc, &c| o.add(o.mul(acc, a), c));
        prop_assert_eq!(val, 0);
    }
}

#[test]
fn frobenius_fixed_points_are_the_base_field() {
    for t in towers() {
        let fixed: Vec<u32> = t.mid().elements().filter(|&x| t.frobenius(Level::Mid, x, 1) == x).collect();
        assert_eq!(fixed, (0..t.q()).collect::<Vec<_>>());
    }
}

#[test]
fn trace_gram_is_invertible() {
    for t in towers() {
        let g: Mat = FqSubspace::trace_gram(&t);
        assert_eq!(g.shape(), (t.n(), t.n()));
        assert!(inverse(t.base(), &g).is_some());
    }
}

#[test]
fn top_field_contains_mid() {
    let t = make_tower(2, 1, 3, 2).unwrap();
    let top = t.top();
    assert_eq!(top.order(), 64);
    for x in top.elements() {
        assert_eq!(t.frobenius(Level::Top, x, 6), x);
    }
    // the mid basis elements are fixed by the q^n-Frobenius on the top field
    for g in t.mid_basis() {
        assert_eq!(t.frobenius(Level::Top, g, 3), g);
    }
}
