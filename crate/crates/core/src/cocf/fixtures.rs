//! Co-word grammars for `Z` and `Z^2` over the letters `±1` (and `±2`),
//! plus a bounded check against the group's own arithmetic.

use super::grammar::{parse_grammar, Grammar};
use super::CocfError;
use crate::group::{GeneratorWord, GroupDescriptor};

/// Words over `1, -1` whose letter counts differ.
pub fn z_coword_grammar() -> Grammar {
    parse_grammar(
        &["1", "-1"],
        "S",
        &[
            "S -> P | Q",
            "B -> | 1 B -1 B | -1 B 1 B",
            "P -> B 1 B | B 1 P",
            "Q -> B -1 B | B -1 Q",
        ],
    )
    .expect("fixture grammar is well formed")
}

/// Words over `±1, ±2` that are nontrivial in one of the two coordinates.
pub fn z2_coword_grammar() -> Grammar {
    parse_grammar(
        &["1", "-1", "2", "-2"],
        "S",
        &[
            "S -> P1 | Q1 | P2 | Q2",
            "B1 -> | 1 B1 -1 B1 | -1 B1 1 B1 | 2 B1 | -2 B1",
            "P1 -> B1 1 B1 | B1 1 P1",
            "Q1 -> B1 -1 B1 | B1 -1 Q1",
            "B2 -> | 2 B2 -2 B2 | -2 B2 2 B2 | 1 B2 | -1 B2",
            "P2 -> B2 2 B2 | B2 2 P2",
            "Q2 -> B2 -2 B2 | B2 -2 Q2",
        ],
    )
    .expect("fixture grammar is well formed")
}

/// Checks that `w` derives exactly the nontrivial words of length at most
/// `max_len` over its terminals, which must name generator letters.
pub fn validate_coword_grammar(w: &Grammar, group: &GroupDescriptor, max_len: usize) -> Result<(), CocfError> {
    let letters: Vec<i64> = w
        .terminals()
        .iter()
        .map(|t| {
            t.parse::<i64>()
                .ok()
                .filter(|&l| l != 0)
                .ok_or_else(|| CocfError::InvalidGrammar(format!("terminal {t:?} is not a generator letter")))
        })
        .collect::<Result<_, _>>()?;
    let lang = w.words_up_to(max_len);
    let mut layer: Vec<Vec<usize>> = vec![vec![]];
    for len in 0..=max_len {
        for word in &layer {
            let gw = GeneratorWord::new(word.iter().map(|&t| letters[t]).collect())?;
            let nontrivial = !group.evaluate_word(&gw)?.is_identity();
            if nontrivial != lang.contains(word) {
                return Err(CocfError::NotCoword {
                    word: gw.letters().to_vec(),
                    nontrivial,
                });
            }
        }
        if len < max_len {
            layer = layer
                .iter()
                .flat_map(|x| {
                    (0..letters.len()).map(move |t| {
                        let mut x = x.clone();
                        x.push(t);
                        x
                    })
                })
                .collect();
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_coword_grammars() {
        validate_coword_grammar(&z_coword_grammar(), &GroupDescriptor::Z { n: 1 }, 8).unwrap();
        validate_coword_grammar(&z2_coword_grammar(), &GroupDescriptor::Z { n: 2 }, 6).unwrap();
    }

    #[test]
    fn broken_grammar_detected() {
        let positive_only = parse_grammar(
            &["1", "-1"],
            "S",
            &["S -> P", "B -> | 1 B -1 B | -1 B 1 B", "P -> B 1 B | B 1 P"],
        )
        .unwrap();
        let e = validate_coword_grammar(&positive_only, &GroupDescriptor::Z { n: 1 }, 4).unwrap_err();
        assert_eq!(e, CocfError::NotCoword { word: vec![-1], nontrivial: true });
        assert!(validate_coword_grammar(&z2_coword_grammar(), &GroupDescriptor::Z { n: 1 }, 2).is_err());
    }
}
