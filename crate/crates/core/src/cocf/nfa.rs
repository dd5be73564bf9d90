use std::collections::{BTreeSet, HashMap, HashSet};

use super::grammar::{Grammar, Symbol};
use super::triple::{TripleEngine, TripleRule};
use crate::rational::{split_transitions, Automaton};

/// Nondeterministic automaton over named letters; `None` labels are
/// empty moves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    pub states: usize,
    pub initial: usize,
    pub finals: Vec<usize>,
    pub transitions: Vec<(usize, Option<String>, usize)>,
}

impl Nfa {
    /// Letters of generator words become their decimal names.
    pub fn from_automaton(a: &Automaton) -> Self {
        let a = split_transitions(a);
        Nfa {
            states: a.states,
            initial: a.initial,
            finals: a.finals.clone(),
            transitions: a
                .transitions
                .iter()
                .map(|(p, w, q)| (*p, w.letters().first().map(|l| l.to_string()), *q))
                .collect(),
        }
    }

    /// One state accepting every word over `alphabet`.
    pub fn universal<S: AsRef<str>>(alphabet: &[S]) -> Self {
        Nfa {
            states: 1,
            initial: 0,
            finals: vec![0],
            transitions: alphabet.iter().map(|a| (0, Some(a.as_ref().to_string()), 0)).collect(),
        }
    }

    /// Accepts `l_1* l_2* ... l_n*` followed by the optional `last` letter.
    pub fn chain<S: AsRef<str>>(loops: &[S], last: Option<&str>) -> Self {
        let n = loops.len();
        let mut transitions = Vec::new();
        for (i, l) in loops.iter().enumerate() {
            transitions.push((i, Some(l.as_ref().to_string()), i));
            transitions.push((i, None, i + 1));
        }
        let finals = match last {
            Some(a) => {
                transitions.push((n, Some(a.to_string()), n + 1));
                vec![n + 1]
            }
            None => vec![n],
        };
        Nfa {
            states: n + 2,
            initial: 0,
            finals,
            transitions,
        }
    }

    fn closure(&self) -> Vec<BTreeSet<usize>> {
        (0..self.states)
            .map(|p| {
                let mut seen = BTreeSet::from([p]);
                let mut stack = vec![p];
                while let Some(x) = stack.pop() {
                    for (a, l, b) in &self.transitions {
                        if *a == x && l.is_none() && seen.insert(*b) {
                            stack.push(*b);
                        }
                    }
                }
                seen
            })
            .collect()
    }

    /// Equivalent automaton without empty moves, same states.
    pub fn remove_epsilon(&self) -> Nfa {
        let cl = self.closure();
        let mut transitions = BTreeSet::new();
        for p in 0..self.states {
            for q in &cl[p] {
                for (a, l, b) in &self.transitions {
                    if a == q {
                        if let Some(l) = l {
                            transitions.insert((p, Some(l.clone()), *b));
                        }
                    }
                }
            }
        }
        let finals = (0..self.states)
            .filter(|p| cl[*p].iter().any(|q| self.finals.contains(q)))
            .collect();
        Nfa {
            states: self.states,
            initial: self.initial,
            finals,
            transitions: transitions.into_iter().collect(),
        }
    }

    pub fn accepts<S: AsRef<str>>(&self, word: &[S]) -> bool {
        let cl = self.closure();
        let mut cur: HashSet<usize> = cl[self.initial].iter().copied().collect();
        for l in word {
            let mut next = HashSet::new();
            for (a, lab, b) in &self.transitions {
                if cur.contains(a) && lab.as_deref() == Some(l.as_ref()) {
                    next.extend(cl[*b].iter().copied());
                }
            }
            cur = next;
        }
        cur.iter().any(|q| self.finals.contains(q))
    }
}

/// Grammar for `L(g) ∩ L(a)` by the triple construction, restricted to
/// useful triples.
pub fn cfg_intersect_regular(g: &Grammar, a: &Nfa) -> Grammar {
    let g = g.trim().binarize();
    let a = a.remove_epsilon();
    let nn = g.nonterminals().len();
    let tindex: HashMap<&str, usize> = g.terminals().iter().enumerate().map(|(i, t)| (t.as_str(), i)).collect();
    // engine symbols: nonterminals, then terminals
    let mut rules = Vec::new();
    for (p, l, q) in &a.transitions {
        if let Some(&t) = l.as_deref().and_then(|l| tindex.get(l)) {
            rules.push(TripleRule {
                lhs: nn + t,
                from: *p,
                to: *q,
                label: Some(t),
                rhs: vec![],
            });
        }
    }
    for (l, r) in g.productions() {
        let rhs: Vec<usize> = r
            .iter()
            .map(|s| match s {
                Symbol::N(i) => *i,
                Symbol::T(t) => nn + t,
            })
            .collect();
        for p in 0..a.states {
            rules.push(TripleRule {
                lhs: *l,
                from: p,
                to: p,
                label: None,
                rhs: rhs.clone(),
            });
        }
    }
    let names: Vec<String> = g.nonterminals().iter().chain(g.terminals()).cloned().collect();
    let engine = TripleEngine::new(rules);
    let starts: Vec<(usize, usize, usize)> = a.finals.iter().map(|&f| (a.initial, g.start(), f)).collect();
    engine.grammar(&starts, g.terminals().to_vec(), |p, z, q| format!("<{p},{},{q}>", names[z]))
}
