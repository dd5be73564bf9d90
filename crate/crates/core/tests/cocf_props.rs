mod common;

use std::collections::BTreeSet;

use common::{grid, rng};
use grouppack::cocf::{
    box_points, build_knapsack_language, cocf_knapsack_report, parikh_image, semilinear_complement,
    z2_coword_grammar, z_coword_grammar, Grammar, LinearSet, SemilinearSet, DEFAULT_SOLVER_LIMIT,
};
use grouppack::group::{GeneratorWord, GroupDescriptor};
use grouppack::harness::random_word;
use grouppack::linear::solve_linear_nat;
use num_bigint::BigInt;
use rand::Rng;

/// Is `v - base` a natural combination of `periods`?
fn reachable(v: &[i64], periods: &[Vec<u64>]) -> bool {
    if v.iter().any(|&x| x < 0) {
        return false;
    }
    if v.iter().all(|&x| x == 0) {
        return true;
    }
    // the first period with positive coefficient is used at least once,
    // or never again
    match periods.split_first() {
        None => false,
        Some((p, rest)) => {
            let minus: Vec<i64> = v.iter().zip(p).map(|(&x, &y)| x - y as i64).collect();
            reachable(&minus, periods) || reachable(v, rest)
        }
    }
}

fn member(s: &SemilinearSet, v: &[u64]) -> bool {
    s.components.iter().any(|l| {
        let d: Vec<i64> = v.iter().zip(&l.base).map(|(&x, &b)| x as i64 - b as i64).collect();
        reachable(&d, &l.periods)
    })
}

fn random_semilinear(r: &mut impl Rng, k: usize) -> SemilinearSet {
    let comps = (0..r.gen_range(0..=3))
        .map(|_| {
            let base = (0..k).map(|_| r.gen_range(0..=3)).collect();
            let periods = (0..r.gen_range(0..=2))
                .map(|_| (0..k).map(|_| r.gen_range(0..=3)).collect())
                .collect();
            LinearSet::new(base, periods)
        })
        .collect();
    SemilinearSet::new(k, comps).unwrap()
}

#[test]
fn complement_partitions_the_box() {
    let mut r = rng(41);
    for _ in 0..120 {
        let k = r.gen_range(1..=3);
        let s = random_semilinear(&mut r, k);
        let c = semilinear_complement(&s, DEFAULT_SOLVER_LIMIT).unwrap();
        for v in box_points(k, 10) {
            assert_ne!(c.contains(&v).unwrap(), member(&s, &v), "{v:?} for {s:?}");
        }
    }
}

#[test]
fn set_operations_match_definitions() {
    let mut r = rng(42);
    for _ in 0..100 {
        let k = r.gen_range(1..=2);
        let (a, b) = (random_semilinear(&mut r, k), random_semilinear(&mut r, k));
        let (u, s, st) = (a.union(&b), a.sum(&b), a.star());
        let pts = box_points(k, 8);
        let in_a: BTreeSet<&Vec<u64>> = pts.iter().filter(|v| member(&a, v)).collect();
        // star within the box: closure of {0} under adding members of a
        let mut closure: BTreeSet<Vec<u64>> = BTreeSet::from([vec![0; k]]);
        loop {
            let next: BTreeSet<Vec<u64>> = closure
                .iter()
                .flat_map(|x| in_a.iter().map(move |y| x.iter().zip(y.iter()).map(|(p, q)| p + q).collect::<Vec<u64>>()))
                .filter(|v| v.iter().all(|&c| c <= 8))
                .collect();
            let before = closure.len();
            closure.extend(next);
            if closure.len() == before {
                break;
            }
        }
        for v in &pts {
            assert_eq!(u.contains(v).unwrap(), member(&a, v) || member(&b, v));
            let split = in_a.iter().any(|x| {
                let rest: Option<Vec<u64>> = v.iter().zip(x.iter()).map(|(p, q)| p.checked_sub(*q)).collect();
                rest.is_some_and(|rest| member(&b, &rest))
            });
            assert_eq!(s.contains(v).unwrap(), split);
            assert_eq!(st.contains(v).unwrap(), closure.contains(v), "{v:?} in ({a:?})*");
        }
    }
}

fn random_grammar(r: &mut impl Rng) -> Grammar {
    let nts = ["S", "A", "B"];
    let symbols = ["a", "b", "S", "A", "B"];
    let mut productions = vec![];
    for (i, nt) in nts.iter().enumerate() {
        for _ in 0..r.gen_range(usize::from(i == 0)..=3) {
            let rhs = (0..r.gen_range(0..=3)).map(|_| symbols[r.gen_range(0..5)].to_string()).collect();
            productions.push((nt.to_string(), rhs));
        }
    }
    Grammar::new(
        nts.iter().map(|s| s.to_string()).collect(),
        vec!["a".into(), "b".into()],
        "S",
        productions,
    )
    .unwrap()
}

#[test]
fn parikh_images_of_random_grammars() {
    let mut r = rng(43);
    let bound = 4u64;
    for _ in 0..150 {
        let g = random_grammar(&mut r);
        let p = parikh_image(&g);
        let mut expected = BTreeSet::new();
        let mut layer: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..=2 * bound {
            for w in &layer {
                if g.generates(w) {
                    expected.insert(vec![
                        w.iter().filter(|&&t| t == 0).count() as u64,
                        w.iter().filter(|&&t| t == 1).count() as u64,
                    ]);
                }
            }
            layer = layer.iter().flat_map(|w| [0, 1].map(|t| [w.clone(), vec![t]].concat())).collect();
        }
        for v in box_points(2, bound) {
            assert_eq!(p.contains(&v).unwrap(), expected.contains(&v), "{v:?} for {g:?}");
        }
    }
}

fn product_is_target(group: &GroupDescriptor, bases: &[GeneratorWord], target: &GeneratorWord, e: &[i64]) -> bool {
    let mut w = GeneratorWord::empty();
    for (b, &x) in bases.iter().zip(e) {
        w.extend(&b.repeat(x as usize));
    }
    w.extend(&target.inverse());
    group.evaluate_word(&w).unwrap().is_identity()
}

#[test]
fn knapsack_language_is_the_set_of_failures() {
    let mut r = rng(44);
    let cases = [
        (GroupDescriptor::Z { n: 1 }, z_coword_grammar(), 1, 25),
        (GroupDescriptor::Z { n: 2 }, z2_coword_grammar(), 2, 6),
    ];
    for (group, grammar, gens, count) in cases {
        for _ in 0..count {
            let k = r.gen_range(1..=2);
            let bases: Vec<GeneratorWord> = (0..k).map(|_| random_word(&mut r, gens, 3)).collect();
            let target = random_word(&mut r, gens, 4);
            let m = build_knapsack_language(&grammar, &bases, &target).unwrap();
            let p = parikh_image(&m);
            for e in grid(k, 0, 4) {
                let word: Vec<usize> = e.iter().enumerate().flat_map(|(i, &x)| std::iter::repeat_n(i, x as usize)).collect();
                let fails = !product_is_target(&group, &bases, &target, &e);
                assert_eq!(m.generates(&word), fails, "{e:?}");
                let v: Vec<u64> = e.iter().map(|&x| x as u64).collect();
                assert_eq!(p.contains(&v).unwrap(), fails);
            }
        }
    }
}

#[test]
fn z_pipeline_matches_linear_solver() {
    let mut r = rng(45);
    let grammar = z_coword_grammar();
    for _ in 0..40 {
        let k = r.gen_range(0..=3);
        let bases: Vec<GeneratorWord> = (0..k).map(|_| random_word(&mut r, 1, 3)).collect();
        let target = random_word(&mut r, 1, 5);
        let report = cocf_knapsack_report(&grammar, &bases, &target, DEFAULT_SOLVER_LIMIT).unwrap();
        let sum = |w: &GeneratorWord| w.letters().iter().sum::<i64>();
        let a: Vec<BigInt> = bases.iter().map(|b| BigInt::from(sum(b))).collect();
        let exact = solve_linear_nat(&a, &BigInt::from(sum(&target))).unwrap();
        assert_eq!(report.solvable, exact.is_some(), "{bases:?} {target:?}");
        if let Some(x) = &report.witness {
            let e: Vec<i64> = x.iter().map(|&v| v as i64).collect();
            assert!(product_is_target(&GroupDescriptor::Z { n: 1 }, &bases, &target, &e));
            assert!(!member(&report.parikh, x));
        }
    }
}
