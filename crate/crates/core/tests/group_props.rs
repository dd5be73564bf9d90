mod common;

use common::rng;
use grouppack::group::{
    heisenberg_power, quad_compare, GeneratorWord, GroupDescriptor, GroupElement, HeisenbergCoord,
    IntMatrix, QuadInt,
};
use grouppack::harness::{random_element, random_word};
use num_bigint::BigInt;
use proptest::prelude::*;
use std::cmp::Ordering;

fn groups() -> Vec<GroupDescriptor> {
    vec![
        GroupDescriptor::Ut { d: 3 },
        GroupDescriptor::Ut { d: 4 },
        GroupDescriptor::HeisZe { e: 1 },
        GroupDescriptor::Galpha,
        GroupDescriptor::Dinf,
        GroupDescriptor::Z { n: 2 },
        GroupDescriptor::product(vec![GroupDescriptor::HeisZe { e: 0 }, GroupDescriptor::Dinf]),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn associativity_and_inverses(seed in any::<u64>()) {
        let mut r = rng(seed);
        for g in groups() {
            let x = random_element(&mut r, &g, 8).unwrap();
            let y = random_element(&mut r, &g, 8).unwrap();
            let z = random_element(&mut r, &g, 8).unwrap();
            let lhs = x.mul(&y).unwrap().mul(&z).unwrap();
            let rhs = x.mul(&y.mul(&z).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert!(x.mul(&x.inv().unwrap()).unwrap().is_identity());
            prop_assert!(x.inv().unwrap().mul(&x).unwrap().is_identity());
            prop_assert_eq!(x.mul(&g.identity()).unwrap(), x);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn word_times_inverse_is_trivial(seed in any::<u64>()) {
        let mut r = rng(seed);
        for g in groups() {
            let w = random_word(&mut r, g.generator_count(), 30);
            let v = g.evaluate_word(&w.concat(&w.inverse())).unwrap();
            prop_assert!(v.is_identity());
        }
    }

    #[test]
    fn unitriangular_flag_is_truthful(entries in proptest::collection::vec(-5i64..=5, 12)) {
        // two 4x4 unitriangular matrices from their six upper entries each
        let make = |e: &[i64]| {
            let mut rows = vec![vec![BigInt::from(0); 4]; 4];
            let mut it = e.iter();
            for (i, row) in rows.iter_mut().enumerate() {
                row[i] = BigInt::from(1);
                for cell in row.iter_mut().skip(i + 1) {
                    *cell = BigInt::from(*it.next().unwrap());
                }
            }
            IntMatrix::from_rows(rows).unwrap()
        };
        let below_zero = |m: &IntMatrix| (0..4).all(|i| (0..i).all(|j| *m.get(i, j) == BigInt::from(0)));
        let (a, b) = (make(&entries[..6]), make(&entries[6..]));
        let p = a.mul(&b).unwrap();
        let q = a.inv().unwrap();
        for m in [&p, &q] {
            prop_assert!(m.is_unitriangular());
            prop_assert!(below_zero(m));
        }
    }
}

#[test]
fn heisenberg_power_is_additive() {
    for a in -3..=3 {
        for b in -3..=3 {
            for c in -3..=3 {
                let base = HeisenbergCoord::new(a, b, c);
                let pw: Vec<HeisenbergCoord> =
                    (0..=40).map(|n| heisenberg_power(&base, &BigInt::from(n))).collect();
                for m in 0..=20 {
                    for n in 0..=20 {
                        assert_eq!(pw[m + n], pw[m].mul(&pw[n]), "({a},{b},{c}) m={m} n={n}");
                    }
                }
            }
        }
    }
}

#[test]
fn quadratic_integers_vanish_only_at_zero() {
    let zero = QuadInt::new(0, 0);
    for p in -50..=50 {
        for q in -50..=50 {
            let eq = quad_compare(&QuadInt::new(p, q), &zero) == Ordering::Equal;
            assert_eq!(eq, p == 0 && q == 0, "{p} + {q} sqrt 2");
        }
    }
}

#[test]
fn mixed_shapes_are_rejected() {
    let x = GroupElement::heis(1, 0, 0);
    let y = GroupElement::vector(&[1]);
    assert!(x.mul(&y).is_err());
    let g = GroupDescriptor::Dinf;
    assert!(g.evaluate_word(&GeneratorWord::new(vec![3]).unwrap()).is_err());
}
