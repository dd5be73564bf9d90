use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::grammar::{Grammar, Symbol};
use super::CocfError;

/// Homomorphism of free monoids, given by the image of each source letter.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FreeMonoidHom {
    pub images: BTreeMap<String, Vec<String>>,
}

impl FreeMonoidHom {
    pub fn new<I, S, W>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (S, W)>,
        S: Into<String>,
        W: IntoIterator,
        W::Item: Into<String>,
    {
        FreeMonoidHom {
            images: pairs
                .into_iter()
                .map(|(s, w)| (s.into(), w.into_iter().map(Into::into).collect()))
                .collect(),
        }
    }

    pub fn image(&self, letter: &str) -> Option<&[String]> {
        self.images.get(letter).map(Vec::as_slice)
    }

    pub fn apply<S: AsRef<str>>(&self, word: &[S]) -> Result<Vec<String>, CocfError> {
        let mut out = Vec::new();
        for l in word {
            let img = self
                .image(l.as_ref())
                .ok_or_else(|| CocfError::UndefinedLetter(l.as_ref().to_string()))?;
            out.extend_from_slice(img);
        }
        Ok(out)
    }

    pub fn source(&self) -> impl Iterator<Item = &String> {
        self.images.keys()
    }
}

/// Grammar for `h(L(g))`: terminals are replaced by their images.
pub fn cfg_image(g: &Grammar, h: &FreeMonoidHom) -> Result<Grammar, CocfError> {
    let mut terminals: Vec<String> = Vec::new();
    let mut images: Vec<Vec<Symbol>> = Vec::with_capacity(g.terminals().len());
    for t in g.terminals() {
        let img = h.image(t).ok_or_else(|| CocfError::UndefinedLetter(t.clone()))?;
        let syms = img
            .iter()
            .map(|l| {
                let i = terminals.iter().position(|x| x == l).unwrap_or_else(|| {
                    terminals.push(l.clone());
                    terminals.len() - 1
                });
                Symbol::T(i)
            })
            .collect();
        images.push(syms);
    }
    let productions = g
        .productions()
        .iter()
        .map(|(l, r)| {
            let rhs = r
                .iter()
                .flat_map(|s| match s {
                    Symbol::T(t) => images[*t].clone(),
                    n => vec![*n],
                })
                .collect();
            (*l, rhs)
        })
        .collect();
    Ok(Grammar::from_parts(g.nonterminals().to_vec(), terminals, g.start(), productions))
}
