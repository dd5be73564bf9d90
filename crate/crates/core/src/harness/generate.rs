use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use super::HarnessError;
use crate::extension::GkpInstance;
use crate::group::{GeneratorWord, GroupDescriptor, GroupElement, HeisenbergCoord};
use crate::hardness::CnfFormula;
use crate::knapsack::KnapsackInstance;
use crate::rational::Automaton;

/// Uniform word of length `0..=max_len` over `generators` generators and
/// their inverses.
pub fn random_word(rng: &mut impl Rng, generators: usize, max_len: usize) -> GeneratorWord {
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..=generators as i64);
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    GeneratorWord::new(letters).expect("letters are nonzero")
}

pub fn random_element(
    rng: &mut impl Rng,
    group: &GroupDescriptor,
    max_len: usize,
) -> Result<GroupElement, HarnessError> {
    let w = random_word(rng, group.generator_count(), max_len);
    Ok(group.evaluate_word(&w)?)
}

/// Product of the powers with exponents drawn from `0..=planted_box`.
fn plant(
    rng: &mut impl Rng,
    group: &GroupDescriptor,
    bases: &[GroupElement],
    planted_box: i64,
) -> Result<GroupElement, HarnessError> {
    let mut acc = group.identity();
    for g in bases {
        acc = acc.mul(&g.pow_i64(rng.gen_range(0..=planted_box))?)?;
    }
    Ok(acc)
}

/// Knapsack over `Z^n` with `k <= max_k` bases, entries in
/// `[-coeff, coeff]`. Half of the targets are planted products.
pub fn random_z_knapsack(
    rng: &mut impl Rng,
    n: usize,
    max_k: usize,
    coeff: i64,
) -> Result<KnapsackInstance, HarnessError> {
    let group = GroupDescriptor::Z { n };
    let vector = |rng: &mut _| {
        let v: Vec<i64> = (0..n).map(|_| Rng::gen_range(rng, -coeff..=coeff)).collect();
        GroupElement::vector(&v)
    };
    let k = rng.gen_range(0..=max_k);
    let bases: Vec<_> = (0..k).map(|_| vector(rng)).collect();
    let target = if rng.gen_bool(0.5) {
        plant(rng, &group, &bases, 6)?
    } else {
        vector(rng)
    };
    Ok(KnapsackInstance::new(group, bases, target)?)
}

/// Knapsack over `H3(Z) x Z^e` with `k <= max_k` bases, every coordinate in
/// `[-coeff, coeff]`. Half of the targets are planted with exponents in
/// `[0, 6]`.
pub fn random_h3z_knapsack(
    rng: &mut impl Rng,
    e: usize,
    max_k: usize,
    coeff: i64,
) -> Result<KnapsackInstance, HarnessError> {
    let group = GroupDescriptor::HeisZe { e };
    let element = |rng: &mut _| GroupElement::Heis {
        coord: HeisenbergCoord::new(
            Rng::gen_range(rng, -coeff..=coeff),
            Rng::gen_range(rng, -coeff..=coeff),
            Rng::gen_range(rng, -coeff..=coeff),
        ),
        z: (0..e).map(|_| BigInt::from(Rng::gen_range(rng, -coeff..=coeff))).collect(),
    };
    let k = rng.gen_range(0..=max_k);
    let bases: Vec<_> = (0..k).map(|_| element(rng)).collect();
    let target = if rng.gen_bool(0.5) {
        plant(rng, &group, &bases, 6)?
    } else {
        element(rng)
    };
    Ok(KnapsackInstance::new(group, bases, target)?)
}

/// Generalized knapsack over `D_inf` with `k <= max_k` bases and shifts in
/// `[-shift, shift]`. Half of the instances are planted: the last constant
/// is chosen so that some exponents in `[0, 6]` solve the instance.
pub fn random_dinf_gkp(
    rng: &mut impl Rng,
    max_k: usize,
    shift: i64,
) -> Result<GkpInstance, HarnessError> {
    let element = |rng: &mut _| {
        GroupElement::dihedral(Rng::gen_range(rng, -shift..=shift), Rng::gen_bool(rng, 0.5))
    };
    let k = rng.gen_range(0..=max_k);
    let bases: Vec<_> = (0..k).map(|_| element(rng)).collect();
    let mut constants: Vec<_> = (0..=k).map(|_| element(rng)).collect();
    if rng.gen_bool(0.5) {
        let mut acc = constants[0].clone();
        for i in 0..k {
            acc = acc.mul(&bases[i].pow_i64(rng.gen_range(0..=6))?)?;
            if i + 1 < k {
                acc = acc.mul(&constants[i + 1])?;
            }
        }
        constants[k] = if k == 0 {
            GroupElement::dihedral(0, false)
        } else {
            acc.inv()?
        };
    }
    Ok(GkpInstance::new(GroupDescriptor::Dinf, constants, bases)?)
}

/// 3CNF formula over `vars` variables with `clauses` clauses of one to three
/// literals on distinct variables.
pub fn random_cnf(rng: &mut impl Rng, vars: usize, clauses: usize) -> Result<CnfFormula, HarnessError> {
    let all: Vec<i64> = (1..=vars as i64).collect();
    let cs = (0..clauses)
        .map(|_| {
            let width = rng.gen_range(1..=vars.min(3));
            all.choose_multiple(rng, width)
                .map(|&v| if rng.gen_bool(0.5) { v } else { -v })
                .collect()
        })
        .collect();
    Ok(CnfFormula::new(vars, cs)?)
}

/// Acyclic automaton on `states` states: every state gets up to
/// `max_out` transitions to higher states, labels are words of length at
/// most `max_label`, and every state is final with probability one third.
pub fn random_acyclic_automaton(
    rng: &mut impl Rng,
    states: usize,
    generators: usize,
    max_out: usize,
    max_label: usize,
) -> Result<Automaton, HarnessError> {
    let states = states.max(1);
    let mut ts = Vec::new();
    for p in 0..states - 1 {
        for _ in 0..rng.gen_range(0..=max_out) {
            let q = rng.gen_range(p + 1..states);
            ts.push((p, random_word(rng, generators, max_label), q));
        }
    }
    let mut finals: Vec<usize> = (0..states).filter(|_| rng.gen_bool(1.0 / 3.0)).collect();
    if finals.is_empty() {
        finals.push(states - 1);
    }
    Ok(Automaton::new(states, 0, finals, ts)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_instances_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            random_z_knapsack(&mut rng, 2, 3, 3).unwrap().validate().unwrap();
            random_h3z_knapsack(&mut rng, 1, 3, 2).unwrap().validate().unwrap();
            random_dinf_gkp(&mut rng, 3, 4).unwrap().validate().unwrap();
            random_cnf(&mut rng, 3, 2).unwrap();
            let a = random_acyclic_automaton(&mut rng, 8, 3, 2, 2).unwrap();
            assert!(a.is_acyclic());
        }
    }

    #[test]
    fn same_seed_same_instance() {
        let a = random_dinf_gkp(&mut ChaCha8Rng::seed_from_u64(9), 3, 4).unwrap();
        let b = random_dinf_gkp(&mut ChaCha8Rng::seed_from_u64(9), 3, 4).unwrap();
        assert_eq!(a, b);
    }
}
