use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::RationalError;
use crate::group::GeneratorWord;

/// Finite automaton whose transitions are labelled by generator words.
///
/// States are `0..states`. JSON form:
/// `{"states":N,"initial":0,"finals":[..],"transitions":[[p,[word],q],..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Automaton {
    pub states: usize,
    pub initial: usize,
    pub finals: Vec<usize>,
    pub transitions: Vec<(usize, GeneratorWord, usize)>,
}

impl Automaton {
    pub fn new(
        states: usize,
        initial: usize,
        finals: Vec<usize>,
        transitions: Vec<(usize, GeneratorWord, usize)>,
    ) -> Result<Self, RationalError> {
        let a = Automaton {
            states,
            initial,
            finals,
            transitions,
        };
        a.validate()?;
        Ok(a)
    }

    pub fn validate(&self) -> Result<(), RationalError> {
        let check = |q: usize| {
            if q < self.states {
                Ok(())
            } else {
                Err(RationalError::StateOutOfRange {
                    state: q,
                    states: self.states,
                })
            }
        };
        check(self.initial)?;
        for &f in &self.finals {
            check(f)?;
        }
        for (p, _, q) in &self.transitions {
            check(*p)?;
            check(*q)?;
        }
        Ok(())
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals.contains(&q)
    }

    /// Topological order of the transition graph, or `None` if it has a cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indeg = vec![0usize; self.states];
        let mut succ = vec![Vec::new(); self.states];
        for (p, _, q) in &self.transitions {
            indeg[*q] += 1;
            succ[*p].push(*q);
        }
        let mut queue: VecDeque<usize> = (0..self.states).filter(|&q| indeg[q] == 0).collect();
        let mut order = Vec::with_capacity(self.states);
        while let Some(p) = queue.pop_front() {
            order.push(p);
            for &q in &succ[p] {
                indeg[q] -= 1;
                if indeg[q] == 0 {
                    queue.push_back(q);
                }
            }
        }
        (order.len() == self.states).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Whether every label is empty or a single letter.
    pub fn is_letter_labelled(&self) -> bool {
        self.transitions.iter().all(|(_, w, _)| w.len() <= 1)
    }

    /// Labels of all accepting paths. Only meaningful for acyclic automata;
    /// the number of paths can be exponential.
    pub fn accepting_labels(&self) -> Result<Vec<GeneratorWord>, RationalError> {
        if !self.is_acyclic() {
            return Err(RationalError::Cyclic);
        }
        let mut out = Vec::new();
        let mut stack = vec![(self.initial, GeneratorWord::empty())];
        while let Some((p, w)) = stack.pop() {
            if self.is_final(p) {
                out.push(w.clone());
            }
            for (src, label, q) in &self.transitions {
                if *src == p {
                    stack.push((*q, w.concat(label)));
                }
            }
        }
        Ok(out)
    }
}

/// Equivalent automaton whose labels have length at most one. Each label of
/// length `n >= 2` becomes a path through `n - 1` fresh states.
pub fn split_transitions(a: &Automaton) -> Automaton {
    let mut states = a.states;
    let mut transitions = Vec::with_capacity(a.transitions.len());
    for (p, w, q) in &a.transitions {
        if w.len() <= 1 {
            transitions.push((*p, w.clone(), *q));
            continue;
        }
        let letters = w.letters();
        let mut cur = *p;
        for (i, &l) in letters.iter().enumerate() {
            let next = if i + 1 == letters.len() {
                *q
            } else {
                states += 1;
                states - 1
            };
            transitions.push((cur, GeneratorWord::letter(l), next));
            cur = next;
        }
    }
    Automaton {
        states,
        initial: a.initial,
        finals: a.finals.clone(),
        transitions,
    }
}

/// Chain automaton for subset sum: state `i` has an empty edge and a
/// `g_{i+1}` edge to state `i + 1`; the last state accepts.
pub fn subsetsum_to_automaton(
    g_words: &[GeneratorWord],
    target: &GeneratorWord,
) -> (Automaton, GeneratorWord) {
    let k = g_words.len();
    let mut transitions = Vec::with_capacity(2 * k);
    for (i, w) in g_words.iter().enumerate() {
        transitions.push((i, GeneratorWord::empty(), i + 1));
        transitions.push((i, w.clone(), i + 1));
    }
    let a = Automaton {
        states: k + 1,
        initial: 0,
        finals: vec![k],
        transitions,
    };
    (a, target.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn w(v: &[i64]) -> GeneratorWord {
        GeneratorWord::new(v.to_vec()).unwrap()
    }

    #[test]
    fn split_one_transition() {
        let a = Automaton::new(2, 0, vec![1], vec![(0, w(&[1, 2]), 1)]).unwrap();
        let b = split_transitions(&a);
        assert_eq!(b.states, 3);
        assert_eq!(b.transitions.len(), 2);
        assert!(b.is_letter_labelled());
    }

    #[test]
    fn split_letter_automaton_unchanged() {
        let a = Automaton::new(3, 0, vec![2], vec![(0, w(&[1]), 1), (1, w(&[]), 2)]).unwrap();
        assert_eq!(split_transitions(&a), a);
    }

    #[test]
    fn split_chain_language() {
        let a = Automaton::new(
            4,
            0,
            vec![3],
            vec![(0, w(&[1, 2]), 1), (1, w(&[-1, 1]), 2), (2, w(&[2, 2]), 3)],
        )
        .unwrap();
        let b = split_transitions(&a);
        assert_eq!(b.transitions.len(), 6);
        let la: BTreeSet<_> = a.accepting_labels().unwrap().into_iter().collect();
        let lb: BTreeSet<_> = b.accepting_labels().unwrap().into_iter().collect();
        assert_eq!(la, lb);
    }

    #[test]
    fn cycle_detected() {
        let a = Automaton::new(2, 0, vec![1], vec![(0, w(&[1]), 1), (1, w(&[1]), 0)]).unwrap();
        assert!(!a.is_acyclic());
        let loop_ = Automaton::new(1, 0, vec![0], vec![(0, w(&[]), 0)]).unwrap();
        assert!(!loop_.is_acyclic());
    }

    #[test]
    fn automaton_json() {
        let a: Automaton = serde_json::from_str(
            r#"{"states":2,"initial":0,"finals":[1],"transitions":[[0,[1,-2],1],[0,[],1]]}"#,
        )
        .unwrap();
        assert_eq!(a.transitions[0].1.letters(), &[1, -2]);
        let back: Automaton = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn out_of_range_state() {
        assert!(Automaton::new(1, 0, vec![2], vec![]).is_err());
    }
}
