use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{alpha_value, AlphaDigits, CnfFormula};
use crate::group::{GeneratorWord, GroupDescriptor, QuadInt};

/// Output of [`cnf_to_subsetsum`]: the numbers `u_1..u_{2n+2m}` and `t`, and
/// their words over the generators `g_alpha` (letter 1) and `h` (letter 2)
/// of `G_alpha`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetSumReduction {
    pub group: GroupDescriptor,
    pub u: Vec<AlphaDigits>,
    pub t: AlphaDigits,
    pub words: Vec<GeneratorWord>,
    pub target: GeneratorWord,
}

/// `w_i = g_alpha^i h g_alpha^-i`, which evaluates to `[[1, alpha^i], [0, 1]]`.
pub fn shear_word(i: usize) -> GeneratorWord {
    let mut v = vec![1i64; i];
    v.push(2);
    v.extend(std::iter::repeat_n(-1, i));
    GeneratorWord::new(v).expect("nonzero letters")
}

/// `w_Y = prod_i w_{3i}^{y_i}` for `Y = sum y_i alpha^(3i)`; evaluates to
/// `[[1, Y], [0, 1]]`.
pub fn digits_word(d: &AlphaDigits) -> GeneratorWord {
    let mut w = GeneratorWord::empty();
    for (i, &y) in d.digits().iter().enumerate() {
        w.extend(&shear_word(3 * i).repeat(y as usize));
    }
    w
}

/// Digit vectors (over `alpha^(3i)`, `i < n + m`) for the numbers `u_k`
/// and `t` of the subset-sum encoding of `c`.
pub fn subsetsum_numbers(c: &CnfFormula) -> (Vec<AlphaDigits>, AlphaDigits) {
    let n = c.vars();
    let m = c.clauses().len();
    let mut u = Vec::with_capacity(2 * n + 2 * m);
    for i in 1..=n as i64 {
        for lit in [i, -i] {
            let mut d = vec![0u8; n + m];
            d[i as usize - 1] = 1;
            for (k, clause) in c.clauses().iter().enumerate() {
                if clause.contains(&lit) {
                    d[n + k] += 1;
                }
            }
            u.push(AlphaDigits::new(d).expect("digits at most 1"));
        }
    }
    for j in 0..m {
        let mut d = vec![0u8; n + m];
        d[n + j] = 1;
        let filler = AlphaDigits::new(d).expect("digit 1");
        u.push(filler.clone());
        u.push(filler);
    }
    let mut t = vec![1u8; n];
    t.extend(std::iter::repeat_n(3, m));
    (u, AlphaDigits::new(t).expect("digits at most 3"))
}

/// Subset sum over `G_alpha` that is solvable iff `c` is satisfiable.
pub fn cnf_to_subsetsum(c: &CnfFormula) -> SubsetSumReduction {
    let (u, t) = subsetsum_numbers(c);
    SubsetSumReduction {
        group: GroupDescriptor::Galpha,
        words: u.iter().map(digits_word).collect(),
        target: digits_word(&t),
        u,
        t,
    }
}

/// Index set (1-based) selected by an assignment: the literal side follows
/// the assignment, and clause `j` takes as many fillers as it lacks true
/// literals, at most two.
pub fn assignment_to_subset(assignment: &[bool], c: &CnfFormula) -> BTreeSet<usize> {
    let n = c.vars();
    let mut set = BTreeSet::new();
    for i in 1..=n {
        set.insert(if assignment[i - 1] { 2 * i - 1 } else { 2 * i });
    }
    for j in 1..=c.clauses().len() {
        let gamma = c.true_literals(j - 1, assignment);
        if gamma <= 2 {
            set.insert(2 * n + 2 * j - 1);
        }
        if gamma <= 1 {
            set.insert(2 * n + 2 * j);
        }
    }
    set
}

/// `sum_{k in subset} u_k` for 1-based indices.
pub fn subset_value(u: &[AlphaDigits], subset: &BTreeSet<usize>) -> QuadInt {
    subset
        .iter()
        .fold(QuadInt::zero(), |acc, &k| acc.add(&alpha_value(&u[k - 1])))
}
