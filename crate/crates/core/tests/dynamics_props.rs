//! Properties of the iteration map and the metric on the phase space.

use chaoshide::dynamics::*;
use proptest::prelude::{prop, prop_assert, prop_assert_eq, proptest, Strategy as Gen};
use chaoshide::dynamics::Strategy;

fn point(n: usize, state: u64, terms: Vec<u32>) -> SystemPoint {
    SystemPoint::new(
        Strategy::finite(n, terms).unwrap(),
        BitState::from_index(state, n).unwrap(),
    )
    .unwrap()
}

fn arb_point(n: usize, len: usize) -> impl Gen<Value = SystemPoint> {
    (0..1u64 << n, prop::collection::vec(1..=n as u32, len)).prop_map(move |(s, t)| point(n, s, t))
}

#[test]
fn every_step_flips_exactly_the_head_cell() {
    for n in 1..=4usize {
        for s in 0..1u64 << n {
            for k in 1..=n as u32 {
                let x = point(n, s, vec![k, 1]);
                let y = step(&VectorNegation, &x).unwrap();
                assert_eq!(x.state().differing_cells(y.state()).unwrap(), vec![k as usize]);
                assert_eq!(y.strategy().prefix(1).unwrap(), vec![1]);
            }
        }
    }
}

#[test]
fn identity_map_fixes_every_state() {
    let x = point(3, 5, vec![1, 2, 3]);
    assert_eq!(iterate(&Identity, x.state(), x.strategy(), 3).unwrap(), *x.state());
}

#[test]
fn custom_map_through_closure() {
    // f(E) = E with cell 1 forced on: only steps choosing cell 1 matter.
    let f = FnIteration(|e: &BitState| {
        let mut out = e.clone();
        out.set(1, true).unwrap();
        out
    });
    let s = Strategy::finite(3, vec![2, 1, 3]).unwrap();
    let out = iterate(&f, &"000".parse().unwrap(), &s, 3).unwrap();
    assert_eq!(out.to_string(), "100");
}

#[test]
fn exhausted_strategy_is_an_error() {
    let s = Strategy::finite(2, vec![1]).unwrap();
    assert!(iterate(&VectorNegation, &BitState::zeros(2).unwrap(), &s, 2).is_err());
}

proptest! {
    #[test]
    fn semigroup(x in arb_point(5, 40), a in 0usize..15, b in 0usize..15) {
        let mut once = x.clone();
        for _ in 0..a + b { once = step(&VectorNegation, &once).unwrap(); }
        let mut twice = x;
        for _ in 0..a { twice = step(&VectorNegation, &twice).unwrap(); }
        for _ in 0..b { twice = step(&VectorNegation, &twice).unwrap(); }
        prop_assert_eq!(once.state(), twice.state());
        prop_assert!(once.strategy().agrees_with(twice.strategy(), 10).unwrap());
    }

    #[test]
    fn iterate_matches_step(x in arb_point(6, 30), n in 0usize..30) {
        let mut p = x.clone();
        for _ in 0..n { p = step(&VectorNegation, &p).unwrap(); }
        prop_assert_eq!(&iterate(&VectorNegation, x.state(), x.strategy(), n).unwrap(), p.state());
    }

    #[test]
    fn metric_axioms(x in arb_point(4, 20), y in arb_point(4, 20), z in arb_point(4, 20)) {
        let d = |a: &SystemPoint, b: &SystemPoint| point_distance(a, b, DEFAULT_DEPTH).unwrap().value;
        prop_assert!(d(&x, &y) >= 0.0);
        prop_assert_eq!(d(&x, &x), 0.0);
        prop_assert_eq!(d(&x, &y), d(&y, &x));
        prop_assert!(d(&x, &z) <= d(&x, &y) + d(&y, &z) + 1e-12);
    }

    #[test]
    fn strategy_distance_is_below_one(a in prop::collection::vec(1u32..=7, 16), b in prop::collection::vec(1u32..=7, 16)) {
        let sa = Strategy::finite(7, a.clone()).unwrap();
        let sb = Strategy::finite(7, b.clone()).unwrap();
        let d = strategy_distance(&sa, &sb, 16).unwrap();
        prop_assert!(d.value < 1.0);
        prop_assert_eq!(d.value == 0.0, a == b);
    }

    #[test]
    fn continuity(x in arb_point(4, 40), tail in prop::collection::vec(1u32..=4, 40), agree in 20usize..30) {
        // Points whose strategies share `agree` terms stay close for a few steps.
        let mut terms = x.strategy().prefix(40).unwrap();
        terms[agree..].copy_from_slice(&tail[agree..]);
        let mut y = SystemPoint::new(Strategy::finite(4, terms).unwrap(), x.state().clone()).unwrap();
        let mut x = x;
        for _ in 0..agree - 16 {
            x = step(&VectorNegation, &x).unwrap();
            y = step(&VectorNegation, &y).unwrap();
            prop_assert_eq!(x.state(), y.state());
            prop_assert!(point_distance(&x, &y, DEFAULT_DEPTH).unwrap().value < 1e-3);
        }
    }
}
