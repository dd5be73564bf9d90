use serde::{Deserialize, Serialize};

use super::complement::semilinear_complement;
use super::grammar::Grammar;
use super::hilbert::DEFAULT_SOLVER_LIMIT;
use super::parikh::parikh_image;
use super::semilinear::SemilinearSet;
use super::hom::{cfg_image, FreeMonoidHom};
use super::nfa::{cfg_intersect_regular, Nfa};
use super::pda::cfg_inverse_hom;
use super::CocfError;
use crate::group::GeneratorWord;

/// Name of the `i`-th power letter (zero-based `i`).
pub fn power_letter(i: usize) -> String {
    format!("a{}", i + 1)
}

const TARGET_LETTER: &str = "a";

/// Grammar for the words `a1^e1 ... ak^ek` with `g1^e1 ... gk^ek ≠ g`,
/// given a co-word grammar `w` whose terminals are the decimal names of
/// generator letters. Terminals of the result are `a1..ak` in order.
pub fn build_knapsack_language(
    w: &Grammar,
    g_words: &[GeneratorWord],
    target: &GeneratorWord,
) -> Result<Grammar, CocfError> {
    let name = |l: &i64| -> Result<String, CocfError> {
        let s = l.to_string();
        if w.terminal_index(&s).is_none() {
            return Err(CocfError::UndefinedLetter(s));
        }
        Ok(s)
    };
    let xs: Vec<String> = (0..g_words.len()).map(power_letter).collect();
    let mut eval = Vec::new();
    for (x, g) in xs.iter().zip(g_words) {
        eval.push((x.clone(), g.letters().iter().map(name).collect::<Result<Vec<_>, _>>()?));
    }
    eval.push((
        TARGET_LETTER.to_string(),
        target.inverse().letters().iter().map(name).collect::<Result<Vec<_>, _>>()?,
    ));
    let hom_eval = FreeMonoidHom::new(eval);
    let k_language = Nfa::chain(&xs, Some(TARGET_LETTER));
    let mut erase: Vec<(String, Vec<String>)> = xs.iter().map(|x| (x.clone(), vec![x.clone()])).collect();
    erase.push((TARGET_LETTER.to_string(), vec![]));
    let hom_erase = FreeMonoidHom::new(erase);

    let pre = cfg_inverse_hom(w, &hom_eval);
    let cut = cfg_intersect_regular(&pre, &k_language);
    let m = cfg_image(&cut, &hom_erase)?.simplify();
    Ok(m.with_terminals(&xs))
}

/// Intermediate results of [`decide_cocf_knapsack`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocfReport {
    pub solvable: bool,
    /// Exponents of a solution, read off the complement.
    pub witness: Option<Vec<u64>>,
    pub language_nonterminals: usize,
    pub language_productions: usize,
    pub parikh: SemilinearSet,
    pub complement: SemilinearSet,
}

/// Whether `g1^e1 ... gk^ek = g` has a solution over `N`, for a group
/// given by a co-word grammar.
pub fn decide_cocf_knapsack(w: &Grammar, g_words: &[GeneratorWord], target: &GeneratorWord) -> Result<bool, CocfError> {
    Ok(cocf_knapsack_report(w, g_words, target, DEFAULT_SOLVER_LIMIT)?.solvable)
}

pub fn cocf_knapsack_report(
    w: &Grammar,
    g_words: &[GeneratorWord],
    target: &GeneratorWord,
    solver_limit: usize,
) -> Result<CocfReport, CocfError> {
    let m = build_knapsack_language(w, g_words, target)?;
    let parikh = parikh_image(&m);
    let complement = semilinear_complement(&parikh, solver_limit)?;
    let witness = complement.witness().cloned();
    if let Some(x) = &witness {
        verify_witness(w, g_words, target, x)?;
    }
    Ok(CocfReport {
        solvable: !complement.is_empty(),
        witness,
        language_nonterminals: m.nonterminals().len(),
        language_productions: m.productions().len(),
        parikh,
        complement,
    })
}

/// A solution makes `g1^x1 ... gk^xk g^-1` trivial, so the co-word grammar
/// must not generate it.
fn verify_witness(w: &Grammar, g_words: &[GeneratorWord], target: &GeneratorWord, x: &[u64]) -> Result<(), CocfError> {
    let mut word = GeneratorWord::empty();
    for (g, &e) in g_words.iter().zip(x) {
        word.extend(&g.repeat(e as usize));
    }
    word.extend(&target.inverse());
    let letters = word
        .letters()
        .iter()
        .map(|l| w.terminal_index(&l.to_string()).ok_or_else(|| CocfError::UndefinedLetter(l.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    if w.generates(&letters) {
        return Err(CocfError::WitnessRejected(x.to_vec()));
    }
    Ok(())
}
