mod common;

use std::time::Instant;

use common::q;
use proptest::prelude::*;
use rand::Rng;
use sdnb_core::local::{hilbert, hilbert_oracle, support_places};
use sdnb_core::{Place, Rational};

fn fin(p: u64) -> Place {
    Place::finite(p).unwrap()
}

fn arb_nonzero() -> impl Strategy<Value = Rational> {
    (any::<i32>(), 1i32..=i32::MAX)
        .prop_filter("nonzero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn arb_place() -> impl Strategy<Value = Place> {
    prop_oneof![
        Just(Place::Real),
        prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 17, 10_007]).prop_map(fin),
    ]
}

proptest! {
    #[test]
    fn symmetric(a in arb_nonzero(), b in arb_nonzero(), v in arb_place()) {
        prop_assert_eq!(hilbert(&a, &b, v).unwrap(), hilbert(&b, &a, v).unwrap());
    }

    #[test]
    fn steinberg_relations(a in arb_nonzero(), v in arb_place()) {
        prop_assert_eq!(hilbert(&a, &-a.clone(), v).unwrap(), 1);
        let one_minus = &Rational::one() - &a;
        if !one_minus.is_zero() {
            prop_assert_eq!(hilbert(&a, &one_minus, v).unwrap(), 1);
        }
    }
}

#[test]
fn product_formula_64_bit() {
    let mut rng = common::rng(11);
    let start = Instant::now();
    for _ in 0..1000 {
        let a = Rational::new(common::nonzero(&mut rng, i64::MAX), rng.gen_range(1..=i64::MAX)).unwrap();
        let b = Rational::new(common::nonzero(&mut rng, i64::MAX), rng.gen_range(1..=i64::MAX)).unwrap();
        let places = support_places(&[(a.clone(), b.clone())]).unwrap();
        let product: i8 = places.iter().map(|&v| hilbert(&a, &b, v).unwrap()).product();
        assert_eq!(product, 1, "({a}, {b})");
    }
    assert!(start.elapsed().as_secs_f64() < 5.0);
}

#[test]
fn agrees_with_oracle_on_grid() {
    for p in [2u64, 3, 5, 7, 11, 13] {
        for a in (-20i64..=20).filter(|&x| x != 0) {
            for b in (-20i64..=20).filter(|&x| x != 0) {
                assert_eq!(
                    hilbert(&q(a), &q(b), fin(p)).unwrap(),
                    hilbert_oracle(a, b, p).unwrap(),
                    "({a}, {b})_{p}"
                );
            }
        }
    }
}

#[test]
fn classical_values() {
    assert_eq!(hilbert(&q(-1), &q(-1), Place::Real).unwrap(), -1);
    assert_eq!(hilbert(&q(-1), &q(-1), fin(2)).unwrap(), -1);
    assert_eq!(hilbert(&q(2), &q(3), fin(3)).unwrap(), -1);
    assert_eq!(hilbert(&common::r("3/4"), &q(-1), fin(3)).unwrap(), -1);
    assert!(hilbert(&q(0), &q(1), fin(3)).is_err());
    assert!(Place::finite(9).is_err());
}
