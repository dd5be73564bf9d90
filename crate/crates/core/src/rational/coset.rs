use serde::{Deserialize, Serialize};

use super::{split_transitions, Automaton, RationalError};
use crate::group::{evaluate_with, GeneratorWord, GroupDescriptor, GroupElement};

/// Rewriting data for a subgroup `H` of finite index in `G`.
///
/// `representatives` lists `g_0 = 1, g_1, .., g_n`, one per right coset of
/// `H`. A rule `(i, a, w, j)` states `g_i a = w g_j` in `G`, where `a` is a
/// signed generator of `G` and `w` a word over the generators of `H`, whose
/// images in `G` are given by `embedding`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetTable {
    pub group: GroupDescriptor,
    pub subgroup: GroupDescriptor,
    pub embedding: Vec<GroupElement>,
    pub representatives: Vec<GroupElement>,
    pub rewrite: Vec<(usize, i64, GeneratorWord, usize)>,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.representatives.len()
    }

    pub fn rule(&self, coset: usize, letter: i64) -> Option<(&GeneratorWord, usize)> {
        self.rewrite
            .iter()
            .find(|(i, a, _, _)| *i == coset && *a == letter)
            .map(|(_, _, w, j)| (w, *j))
    }

    /// Evaluates a word over `H` inside `G`.
    pub fn embed(&self, w: &GeneratorWord) -> Result<GroupElement, RationalError> {
        Ok(evaluate_with(&self.embedding, &self.group.identity(), w)?)
    }

    /// Checks totality and every defining equation `g_i a = w g_j`.
    ///
    /// Distinctness of cosets can only be checked partially without a
    /// membership test for `H`: the representatives must be pairwise
    /// distinct elements.
    pub fn validate(&self) -> Result<(), RationalError> {
        let bad = |m: String| Err(RationalError::InvalidCosetTable(m));
        if self.representatives.is_empty() || !self.representatives[0].is_identity() {
            return bad("the first representative must be the identity".into());
        }
        for (i, r) in self.representatives.iter().enumerate() {
            if !self.group.contains(r) {
                return bad(format!("representative {i} is not in the group"));
            }
            if self.representatives[..i].contains(r) {
                return bad(format!("representative {i} is repeated"));
            }
        }
        if self.embedding.len() != self.subgroup.generator_count() {
            return bad("embedding must give one image per subgroup generator".into());
        }
        for e in &self.embedding {
            if !self.group.contains(e) {
                return bad("embedded generator is not in the group".into());
            }
        }
        let gens = self.group.generators();
        let n = self.index();
        for i in 0..n {
            for a in 1..=gens.len() as i64 {
                for letter in [a, -a] {
                    let count = self
                        .rewrite
                        .iter()
                        .filter(|(c, l, _, _)| *c == i && *l == letter)
                        .count();
                    if count != 1 {
                        return bad(format!(
                            "expected exactly one rule for coset {i} and letter {letter}, found {count}"
                        ));
                    }
                }
            }
        }
        for (i, a, w, j) in &self.rewrite {
            if *i >= n || *j >= n {
                return bad(format!("rule ({i}, {a}) names a coset out of range"));
            }
            if *a == 0 || a.unsigned_abs() as usize > gens.len() {
                return bad(format!("rule ({i}, {a}) names an unknown generator"));
            }
            let lhs = self.representatives[*i].mul(&crate::group::letter_of(&gens, *a)?)?;
            let rhs = self.embed(w)?.mul(&self.representatives[*j])?;
            if lhs != rhs {
                return bad(format!("rule ({i}, {a}) does not satisfy g_i a = w g_j"));
            }
        }
        Ok(())
    }
}

/// `H = <t>` in the infinite dihedral group, with representatives `1` and `s`.
pub fn dinf_coset_table() -> CosetTable {
    let w = |v: &[i64]| GeneratorWord::new(v.to_vec()).expect("nonzero letters");
    CosetTable {
        group: GroupDescriptor::Dinf,
        subgroup: GroupDescriptor::Z { n: 1 },
        embedding: vec![GroupElement::dihedral(1, false)],
        representatives: vec![GroupElement::dihedral(0, false), GroupElement::dihedral(0, true)],
        rewrite: vec![
            (0, 1, w(&[1]), 0),
            (0, -1, w(&[-1]), 0),
            (0, 2, w(&[]), 1),
            (0, -2, w(&[]), 1),
            (1, 1, w(&[-1]), 1),
            (1, -1, w(&[1]), 1),
            (1, 2, w(&[]), 0),
            (1, -2, w(&[]), 0),
        ],
    }
}

/// Writes `x = y g_s` with `y` over `H`, tracking the current coset while
/// reading `x` from left to right.
pub fn decompose_coset(
    x: &GeneratorWord,
    table: &CosetTable,
) -> Result<(GeneratorWord, usize), RationalError> {
    let mut y = GeneratorWord::empty();
    let mut i = 0;
    for &a in x.letters() {
        let (w, j) = table.rule(i, a).ok_or_else(|| {
            RationalError::InvalidCosetTable(format!("no rule for coset {i} and letter {a}"))
        })?;
        y.extend(w);
        i = j;
    }
    Ok((y, i))
}

/// Builds an automaton over `H` on the states `Q x {g_0..g_n}` such that
/// `x` lies in the evaluated language of `a` iff the returned `y` lies in
/// the evaluated language of the new automaton.
pub fn transfer_to_subgroup(
    a: &Automaton,
    x: &GeneratorWord,
    table: &CosetTable,
) -> Result<(Automaton, GeneratorWord), RationalError> {
    a.validate()?;
    let a = split_transitions(a);
    let n = table.index();
    let state = |q: usize, i: usize| q * n + i;
    let mut transitions = Vec::new();
    for (p, label, q) in &a.transitions {
        for i in 0..n {
            match label.letters().first() {
                None => transitions.push((state(*p, i), GeneratorWord::empty(), state(*q, i))),
                Some(&l) => {
                    let (w, j) = table.rule(i, l).ok_or_else(|| {
                        RationalError::InvalidCosetTable(format!("no rule for coset {i} and letter {l}"))
                    })?;
                    transitions.push((state(*p, i), w.clone(), state(*q, j)));
                }
            }
        }
    }
    let (y, s) = decompose_coset(x, table)?;
    let b = Automaton {
        states: a.states * n,
        initial: state(a.initial, 0),
        finals: a.finals.iter().map(|&f| state(f, s)).collect(),
        transitions,
    };
    Ok((b, y))
}
