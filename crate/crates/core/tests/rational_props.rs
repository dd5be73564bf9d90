mod common;

use std::collections::BTreeSet;

use common::rng;
use grouppack::group::{GroupDescriptor, GroupElement};
use grouppack::harness::{
    brute_force_aratmp, brute_force_subsetsum, random_acyclic_automaton, random_word, OracleBudget,
};
use grouppack::knapsack::KnapsackInstance;
use grouppack::rational::{
    acyclic_membership, acyclic_membership_run, dinf_coset_table, split_transitions,
    subsetsum_to_automaton, transfer_to_subgroup, Automaton,
};
use proptest::prelude::*;
use rand::Rng;

fn image(a: &Automaton, g: &GroupDescriptor) -> BTreeSet<String> {
    // canonical JSON of each element, as GroupElement has no order
    a.accepting_labels()
        .unwrap()
        .iter()
        .map(|w| serde_json::to_string(&g.evaluate_word(w).unwrap()).unwrap())
        .collect()
}

/// Random automaton and query; half of the queries are accepted labels.
fn instance(seed: u64, g: &GroupDescriptor) -> (Automaton, grouppack::group::GeneratorWord) {
    let mut r = rng(seed);
    let states = r.gen_range(1..=8);
    let a = random_acyclic_automaton(&mut r, states, g.generator_count(), 2, 2).unwrap();
    let labels = a.accepting_labels().unwrap();
    let x = if !labels.is_empty() && r.gen_bool(0.5) {
        labels[r.gen_range(0..labels.len())].clone()
    } else {
        random_word(&mut r, g.generator_count(), 4)
    };
    (a, x)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn membership_matches_path_enumeration(seed in any::<u64>()) {
        for g in [GroupDescriptor::Z { n: 2 }, GroupDescriptor::Ut { d: 3 }, GroupDescriptor::Dinf] {
            let (a, x) = instance(seed, &g);
            let run = acyclic_membership_run(&a, &x, &g).unwrap();
            let oracle = brute_force_aratmp(&a, &x, &g).unwrap();
            prop_assert_eq!(run.member, oracle.is_some());
            if let Some(wit) = &run.witness {
                prop_assert_eq!(g.evaluate_word(wit).unwrap(), g.evaluate_word(&x).unwrap());
            }
            if let (Some(norm), Some(bound)) = (&run.max_norm, &run.bound) {
                prop_assert!(norm.magnitude() <= bound);
            }
        }
    }

    #[test]
    fn splitting_preserves_the_image(seed in any::<u64>()) {
        for g in [GroupDescriptor::Ut { d: 3 }, GroupDescriptor::Dinf] {
            let (a, _) = instance(seed, &g);
            let b = split_transitions(&a);
            prop_assert!(b.is_letter_labelled());
            prop_assert_eq!(image(&a, &g), image(&b, &g));
        }
    }

    #[test]
    fn transfer_preserves_answers(seed in any::<u64>()) {
        let g = GroupDescriptor::Dinf;
        let table = dinf_coset_table();
        let (a, x) = instance(seed, &g);
        let (b, y) = transfer_to_subgroup(&a, &x, &table).unwrap();
        let before = brute_force_aratmp(&a, &x, &g).unwrap().is_some();
        let after = brute_force_aratmp(&b, &y, &table.subgroup).unwrap().is_some();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn subsetsum_chain_matches_enumeration(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = GroupDescriptor::Ut { d: 3 };
        let k = r.gen_range(0..=5);
        let words: Vec<_> = (0..k).map(|_| random_word(&mut r, 3, 3)).collect();
        let target = random_word(&mut r, 3, 4);
        let (a, x) = subsetsum_to_automaton(&words, &target);
        let inst = KnapsackInstance::new(
            g.clone(),
            words.iter().map(|w| g.evaluate_word(w).unwrap()).collect(),
            g.evaluate_word(&target).unwrap(),
        )
        .unwrap();
        let oracle = brute_force_subsetsum(&inst, &OracleBudget::default()).unwrap();
        prop_assert_eq!(acyclic_membership(&a, &x, &g).unwrap(), oracle.is_some());
    }
}

#[test]
fn coset_table_is_consistent() {
    let t = dinf_coset_table();
    t.validate().unwrap();
    assert_eq!(t.index(), 2);
    assert_eq!(t.embedding, vec![GroupElement::dihedral(1, false)]);
}

#[test]
fn cyclic_automata_are_rejected() {
    let a = Automaton::new(2, 0, vec![1], vec![(0, common::w(&[1]), 1), (1, common::w(&[1]), 0)]).unwrap();
    assert!(acyclic_membership(&a, &common::w(&[1]), &GroupDescriptor::Dinf).is_err());
}
