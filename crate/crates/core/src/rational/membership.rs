use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::{split_transitions, Automaton, RationalError};
use crate::group::{ut_norm, GeneratorWord, GroupDescriptor, GroupElement};

/// `d + (d-1) * C(n, d-1) * d^(2(d-2)) * m^(d-1)`: bounds `|M|` for every
/// product `M` of at most `n` matrices of `UT_d(Z)` with norm at most `m`.
pub fn entry_growth_bound(d: usize, m: &BigUint, n: usize) -> Result<BigUint, RationalError> {
    if d == 0 {
        return Err(RationalError::BoundPrecondition("d must be positive".into()));
    }
    if n < 2 * d {
        return Err(RationalError::BoundPrecondition(format!(
            "n = {n} is smaller than 2d = {}",
            2 * d
        )));
    }
    if d == 1 {
        return Ok(BigUint::one());
    }
    let d_big = BigUint::from(d);
    let binom = binomial(n, d - 1);
    let tail = BigUint::from(d - 1) * binom * d_big.pow(2 * (d as u32 - 2)) * m.pow(d as u32 - 1);
    Ok(d_big + tail)
}

fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Result of a membership run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipRun {
    pub member: bool,
    /// Label of an accepting path evaluating to the query element.
    pub witness: Option<GeneratorWord>,
    /// Largest norm seen among intermediate products (unitriangular groups only).
    pub max_norm: Option<BigInt>,
    /// The growth bound the run was checked against (unitriangular groups only).
    pub bound: Option<BigUint>,
}

/// Decides whether `x` equals, in `group`, the label of some accepting path
/// of the acyclic automaton `a`.
pub fn acyclic_membership(
    a: &Automaton,
    x: &GeneratorWord,
    group: &GroupDescriptor,
) -> Result<bool, RationalError> {
    Ok(acyclic_membership_run(a, x, group)?.member)
}

/// Set-valued dynamic programming over a topological order. Each state keeps
/// the set of elements reachable along paths from the initial state, with a
/// back-pointer for witness reconstruction. Over `UT_d(Z)` every product is
/// checked against [`entry_growth_bound`].
pub fn acyclic_membership_run(
    a: &Automaton,
    x: &GeneratorWord,
    group: &GroupDescriptor,
) -> Result<MembershipRun, RationalError> {
    a.validate()?;
    let b = split_transitions(a);
    let order = b.topological_order().ok_or(RationalError::Cyclic)?;
    let target = group.evaluate_word(x)?;
    let gens = group.generators();
    let letter_elem = |l: i64| crate::group::letter_of(&gens, l);

    let ut_dim = match group {
        GroupDescriptor::Ut { d } => Some(*d),
        _ => None,
    };
    let bound = match ut_dim {
        Some(d) => {
            let mut m = BigInt::from(d);
            for (_, w, _) in &b.transitions {
                if let Some(&l) = w.letters().first() {
                    if let GroupElement::Matrix(mat) = letter_elem(l)? {
                        m = m.max(ut_norm(&mat));
                    }
                }
            }
            let n = b.states.max(2 * d);
            Some(entry_growth_bound(d, &m.to_biguint().unwrap_or_default(), n)?)
        }
        None => None,
    };
    let mut max_norm = ut_dim.map(|_| BigInt::zero());

    let mut out: Vec<Vec<(usize, Option<i64>)>> = vec![Vec::new(); b.states];
    for (i, (p, w, _)) in b.transitions.iter().enumerate() {
        out[*p].push((i, w.letters().first().copied()));
    }

    type Back = Option<(usize, GroupElement, Option<i64>)>;
    let mut reach: Vec<HashMap<GroupElement, Back>> = vec![HashMap::new(); b.states];
    reach[b.initial].insert(group.identity(), None);

    for &p in &order {
        if reach[p].is_empty() {
            continue;
        }
        let here: Vec<GroupElement> = reach[p].keys().cloned().collect();
        for &(ti, letter) in &out[p] {
            let q = b.transitions[ti].2;
            let step = match letter {
                Some(l) => Some(letter_elem(l)?),
                None => None,
            };
            for g in &here {
                let next = match &step {
                    Some(s) => g.mul(s)?,
                    None => g.clone(),
                };
                if let (Some(bound), GroupElement::Matrix(mat)) = (&bound, &next) {
                    let norm = ut_norm(mat);
                    if norm > BigInt::from(bound.clone()) {
                        return Err(RationalError::NormBoundExceeded {
                            norm: norm.to_string(),
                            bound: bound.to_string(),
                        });
                    }
                    if let Some(mx) = max_norm.as_mut() {
                        if norm > *mx {
                            *mx = norm;
                        }
                    }
                }
                reach[q]
                    .entry(next)
                    .or_insert_with(|| Some((p, g.clone(), letter)));
            }
        }
    }

    let hit = b
        .finals
        .iter()
        .copied()
        .find(|&f| reach[f].contains_key(&target));
    let witness = hit.map(|f| {
        let mut letters = Vec::new();
        let mut state = f;
        let mut elem = target.clone();
        while let Some(Some((p, prev, letter))) = reach[state].get(&elem).cloned() {
            if let Some(l) = letter {
                letters.push(l);
            }
            state = p;
            elem = prev;
        }
        letters.reverse();
        GeneratorWord::new(letters).expect("letters are nonzero")
    });
    Ok(MembershipRun {
        member: hit.is_some(),
        witness,
        max_norm,
        bound,
    })
}
