mod common;

use common::{grid, rng};
use grouppack::extension::{
    decide_gkp, gkp_normalize, move_right, purify, purify_step, AffineEntry, CyclicExtension,
    DihedralExtension, FiniteExtension, GkpInstance, PureInstance,
};
use grouppack::group::{GroupDescriptor, GroupElement};
use grouppack::harness::{dinf_gkp_exact, random_dinf_gkp, zn_knapsack_exact, OracleBudget};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::Rng;

fn nat(p: &[i64]) -> Vec<BigInt> {
    p.iter().map(|&v| BigInt::from(v)).collect()
}

fn box_solutions(inst: &GkpInstance, hi: i64) -> Vec<Vec<BigInt>> {
    grid(inst.k(), 0, hi)
        .into_iter()
        .map(|p| nat(&p))
        .filter(|n| inst.is_solution(n).unwrap())
        .collect()
}

fn unflipped(g: &GroupElement) -> bool {
    matches!(g, GroupElement::Dihedral(x) if !x.flip)
}

/// All constants but the last and all bases lie in the rotation subgroup.
fn dihedral_pure(inst: &GkpInstance) -> bool {
    inst.bases.iter().all(unflipped) && inst.constants[..inst.k()].iter().all(unflipped)
}

/// A natural `x` with `p.map(x) = n`, if the map can produce `n`.
fn preimage(p: &PureInstance, n: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut x: Vec<Option<BigInt>> = vec![None; p.instance.k()];
    for (e, v) in p.map.0.iter().zip(n) {
        match e {
            AffineEntry::Const { value } if &value.0 == v => {}
            AffineEntry::Const { .. } => return None,
            AffineEntry::Affine { var, offset, stride } => {
                let d = v - &offset.0;
                if stride.0.is_zero() {
                    if !d.is_zero() {
                        return None;
                    }
                    continue;
                }
                let (q, r) = d.div_rem(&stride.0);
                if !r.is_zero() || q.is_negative() {
                    return None;
                }
                match &x[*var] {
                    Some(old) if *old != q => return None,
                    _ => x[*var] = Some(q),
                }
            }
        }
    }
    Some(x.into_iter().map(Option::unwrap_or_default).collect())
}

#[test]
fn dihedral_decision_matches_exact_oracle() {
    let mut r = rng(31);
    let o = DihedralExtension::default();
    for _ in 0..300 {
        let inst = random_dinf_gkp(&mut r, 3, 4).unwrap();
        let d = decide_gkp(&inst, &o).unwrap();
        let exact = dinf_gkp_exact(&inst).unwrap();
        assert_eq!(d.solvable, exact.is_some(), "{inst:?}");
        if let Some(w) = &d.witness {
            assert!(inst.is_solution(w).unwrap());
        }
        if inst.k() <= 2 && !box_solutions(&inst, 12).is_empty() {
            assert!(d.solvable);
        }
    }
}

#[test]
fn purification_is_pure_and_covers_solutions() {
    let mut r = rng(32);
    let o = DihedralExtension::default();
    for _ in 0..150 {
        let inst = random_dinf_gkp(&mut r, 3, 3).unwrap();
        let pure = purify(&inst, &o).unwrap();
        for p in &pure {
            assert!(dihedral_pure(&p.instance));
            for x in box_solutions(&p.instance, 4) {
                assert!(inst.is_solution(&p.map.apply(&x)).unwrap());
            }
        }
        for n in box_solutions(&inst, 6) {
            let covered = pure.iter().any(|p| {
                preimage(p, &n).is_some_and(|x| p.instance.is_solution(&x).unwrap())
            });
            assert!(covered, "{n:?} of {inst:?}");
        }
    }
}

#[test]
fn purification_steps_reduce_impurity() {
    let mut r = rng(33);
    let o = DihedralExtension::default();
    for _ in 0..300 {
        let inst = random_dinf_gkp(&mut r, 3, 5).unwrap();
        let before = inst.impurity(&o).unwrap();
        for (child, map) in purify_step(&inst, &o).unwrap() {
            assert_eq!(map.0.len(), inst.k());
            if before > 0 {
                assert!(child.impurity(&o).unwrap() < before);
            } else {
                assert_eq!(child, inst);
            }
        }
    }
}

fn dihedral(r: &mut impl Rng) -> GroupElement {
    GroupElement::dihedral(r.gen_range(-5..=5), r.gen_bool(0.5))
}

#[test]
fn move_right_identity() {
    let mut r = rng(34);
    let o = DihedralExtension::default();
    let mut checked = 0;
    while checked < 200 {
        let (g1, g2) = (dihedral(&mut r), dihedral(&mut r));
        if o.rho(&g1.mul(&g2).unwrap()).unwrap() != o.rho(&g1).unwrap() {
            continue;
        }
        let (h1, h2, rep) = move_right(&g1, &g2, &o).unwrap();
        assert!(o.in_subgroup(&h1).unwrap() && o.in_subgroup(&h2).unwrap());
        for t in 0..=10 {
            let t = BigInt::from(t);
            let left = g1.mul(&g2.pow(&t).unwrap()).unwrap();
            let right = h1.mul(&h2.pow(&t).unwrap()).unwrap().mul(&rep).unwrap();
            assert_eq!(left, right);
        }
        checked += 1;
    }
}

#[test]
fn normalization_preserves_solution_sets() {
    let mut r = rng(35);
    for _ in 0..200 {
        let inst = random_dinf_gkp(&mut r, 3, 4).unwrap();
        let ks = gkp_normalize(&inst).unwrap();
        for p in grid(inst.k(), 0, 5) {
            let n = nat(&p);
            assert_eq!(inst.is_solution(&n).unwrap(), ks.is_solution(&n).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn cyclic_extension_is_exact(
        modulus in 1u32..=4,
        bases in prop::collection::vec(-6i64..=6, 0..=3),
        constants in prop::collection::vec(-9i64..=9, 4),
    ) {
        let k = bases.len();
        let cs: Vec<GroupElement> = constants[..=k].iter().map(|&c| GroupElement::vector(&[c])).collect();
        let bs: Vec<GroupElement> = bases.iter().map(|&b| GroupElement::vector(&[b])).collect();
        let inst = GkpInstance::new(GroupDescriptor::Z { n: 1 }, cs, bs).unwrap();
        let o = CyclicExtension::new(modulus);
        let d = decide_gkp(&inst, &o).unwrap();
        let vectors: Vec<Vec<i64>> = bases.iter().map(|&b| vec![b]).collect();
        let target = -constants[..=k].iter().sum::<i64>();
        let exact = zn_knapsack_exact(&vectors, &[target], &OracleBudget::default()).unwrap();
        prop_assert_eq!(d.solvable, exact.is_some());
        if let Some(w) = &d.witness {
            prop_assert!(inst.is_solution(w).unwrap());
        }
    }
}
