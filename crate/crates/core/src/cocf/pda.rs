//! Inverse homomorphic images through a pushdown automaton that expands
//! productions on its stack and reads `h(y)` out of a finite buffer.

use std::collections::HashMap;

use super::grammar::{Grammar, Symbol};
use super::hom::FreeMonoidHom;
use super::triple::{TripleEngine, TripleRule};

/// Pushdown automaton accepting by empty stack. Every move pops one
/// symbol and pushes at most two, `push[0]` ending on top.
#[derive(Debug, Clone)]
pub struct Pda {
    pub states: usize,
    pub initial: usize,
    pub bottom: usize,
    pub stack_symbols: usize,
    pub moves: Vec<PdaMove>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PdaMove {
    pub from: usize,
    pub input: Option<usize>,
    pub pop: usize,
    pub to: usize,
    pub push: Vec<usize>,
}

const INIT: usize = 0;
const FINAL: usize = 1;
const EMPTY_BUFFER: usize = 2;

/// The automaton for `h^{-1}(L(g))` over the source letters of `h`, in
/// the order of [`FreeMonoidHom::source`].
pub fn inverse_hom_pda(g: &Grammar, h: &FreeMonoidHom) -> Pda {
    let g = g.trim().binarize();
    let nn = g.nonterminals().len();
    let nt = g.terminals().len();
    let bottom = nn + nt;
    let stack_of = |s: &Symbol| match s {
        Symbol::N(i) => *i,
        Symbol::T(t) => nn + t,
    };
    // buffer states are the suffixes of images; letters outside the
    // grammar's alphabet are kept as None and never matched
    let mut buffers: HashMap<Vec<Option<usize>>, usize> = HashMap::from([(Vec::new(), EMPTY_BUFFER)]);
    let mut contents: Vec<Vec<Option<usize>>> = vec![Vec::new(), Vec::new(), Vec::new()];
    let mut image_state = Vec::new();
    for y in h.source() {
        let img: Vec<Option<usize>> = h.image(y).unwrap().iter().map(|l| g.terminal_index(l)).collect();
        for k in (0..img.len()).rev() {
            let suffix = img[k..].to_vec();
            if !buffers.contains_key(&suffix) {
                buffers.insert(suffix.clone(), contents.len());
                contents.push(suffix);
            }
        }
        image_state.push(buffers[&img]);
    }
    let states = contents.len();
    let mut moves = vec![
        PdaMove {
            from: INIT,
            input: None,
            pop: bottom,
            to: EMPTY_BUFFER,
            push: vec![g.start(), bottom],
        },
        PdaMove {
            from: EMPTY_BUFFER,
            input: None,
            pop: bottom,
            to: FINAL,
            push: vec![],
        },
    ];
    for p in EMPTY_BUFFER..states {
        for (l, r) in g.productions() {
            moves.push(PdaMove {
                from: p,
                input: None,
                pop: *l,
                to: p,
                push: r.iter().map(stack_of).collect(),
            });
        }
        if let Some(Some(t)) = contents[p].first() {
            moves.push(PdaMove {
                from: p,
                input: None,
                pop: nn + t,
                to: buffers[&contents[p][1..].to_vec()],
                push: vec![],
            });
        }
    }
    for (y, &q) in image_state.iter().enumerate() {
        for z in 0..=bottom {
            moves.push(PdaMove {
                from: EMPTY_BUFFER,
                input: Some(y),
                pop: z,
                to: q,
                push: vec![z],
            });
        }
    }
    Pda {
        states,
        initial: INIT,
        bottom,
        stack_symbols: bottom + 1,
        moves,
    }
}

/// Grammar for the language of `pda` by the triple construction; only
/// useful triples are produced.
pub fn pda_to_grammar(pda: &Pda, terminals: Vec<String>) -> Grammar {
    let rules = pda
        .moves
        .iter()
        .map(|m| TripleRule {
            lhs: m.pop,
            from: m.from,
            to: m.to,
            label: m.input,
            rhs: m.push.clone(),
        })
        .collect();
    let engine = TripleEngine::new(rules);
    let starts: Vec<_> = (0..pda.states).map(|q| (pda.initial, pda.bottom, q)).collect();
    engine.grammar(&starts, terminals, |p, z, q| format!("<{p},{z},{q}>"))
}

/// Grammar for `{w : h(w) ∈ L(g)}` over the source letters of `h`.
pub fn cfg_inverse_hom(g: &Grammar, h: &FreeMonoidHom) -> Grammar {
    let pda = inverse_hom_pda(g, h);
    pda_to_grammar(&pda, h.source().cloned().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocf::grammar::parse_grammar;
    use crate::cocf::grammar::tests::{anbn, w};
    use std::collections::BTreeSet;

    fn all_words(alphabet: &[&str], n: usize) -> Vec<Vec<String>> {
        let mut out = vec![vec![]];
        let mut layer: Vec<Vec<String>> = vec![vec![]];
        for _ in 0..n {
            layer = layer
                .iter()
                .flat_map(|x| alphabet.iter().map(move |a| {
                    let mut x = x.clone();
                    x.push(a.to_string());
                    x
                }))
                .collect();
            out.extend(layer.iter().cloned());
        }
        out
    }

    /// Words up to `n` over the source whose image the grammar derives.
    fn preimage_oracle(g: &Grammar, h: &FreeMonoidHom, n: usize) -> BTreeSet<Vec<String>> {
        let src: Vec<&str> = h.source().map(String::as_str).collect();
        let max_img = h.images.values().map(Vec::len).max().unwrap_or(0);
        let lang = g.named_words_up_to(n * max_img);
        all_words(&src, n)
            .into_iter()
            .filter(|x| lang.contains(&h.apply(x).unwrap()))
            .collect()
    }

    #[test]
    fn identity_preimage() {
        let g = anbn();
        let h = FreeMonoidHom::new([("a", w("a")), ("b", w("b"))]);
        let r = cfg_inverse_hom(&g, &h);
        assert_eq!(r.named_words_up_to(6), g.named_words_up_to(6));
    }

    #[test]
    fn balanced_images_never_unequal() {
        let g = parse_grammar(
            &["a", "ā"],
            "S",
            &["S -> P | Q", "B -> | a B ā B | ā B a B", "P -> B a B | B a P", "Q -> B ā B | B ā Q"],
        )
        .unwrap();
        let h = FreeMonoidHom::new([("b", w("a ā"))]);
        let r = cfg_inverse_hom(&g, &h);
        assert!(r.named_words_up_to(5).is_empty());
        assert!(r.is_empty_language());
    }

    #[test]
    fn anbn_preimage() {
        let h = FreeMonoidHom::new([("c", w("a b"))]);
        let r = cfg_inverse_hom(&anbn(), &h);
        let expected: BTreeSet<Vec<String>> = BTreeSet::from([vec![], w("c")]);
        assert_eq!(r.named_words_up_to(5), expected);
        assert_eq!(r.named_words_up_to(5), preimage_oracle(&anbn(), &h, 5));
    }

    #[test]
    fn mixed_images_match_oracle() {
        let g = parse_grammar(&["(", ")"], "S", &["S -> ( S ) S | "]).unwrap();
        let h = FreeMonoidHom::new([("x", w("( (")), ("y", w(")")), ("e", vec![]), ("z", w("q"))]);
        let r = cfg_inverse_hom(&g, &h);
        assert_eq!(r.named_words_up_to(4), preimage_oracle(&g, &h, 4));
    }
}
