use std::collections::{BTreeSet, HashMap, HashSet};
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use super::CocfError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    T(usize),
    N(usize),
}

/// Context-free grammar with named symbols and index-based productions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "GrammarRepr", try_from = "GrammarRepr")]
pub struct Grammar {
    nonterminals: Vec<String>,
    terminals: Vec<String>,
    start: usize,
    productions: Vec<(usize, Vec<Symbol>)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GrammarRepr {
    pub nonterminals: Vec<String>,
    pub terminals: Vec<String>,
    pub start: String,
    pub productions: Vec<(String, Vec<String>)>,
}

impl Grammar {
    /// Builds a grammar from names; every right-hand symbol must be declared.
    pub fn new(
        nonterminals: Vec<String>,
        terminals: Vec<String>,
        start: &str,
        productions: Vec<(String, Vec<String>)>,
    ) -> Result<Self, CocfError> {
        let nt: HashMap<&str, usize> = nonterminals.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let t: HashMap<&str, usize> = terminals.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        if nt.len() != nonterminals.len() || t.len() != terminals.len() {
            return Err(CocfError::InvalidGrammar("duplicate symbol name".into()));
        }
        if let Some(s) = nonterminals.iter().find(|s| t.contains_key(s.as_str())) {
            return Err(CocfError::InvalidGrammar(format!("{s:?} is both a terminal and a nonterminal")));
        }
        let start = *nt
            .get(start)
            .ok_or_else(|| CocfError::InvalidGrammar(format!("start symbol {start:?} is not a nonterminal")))?;
        let mut prods = Vec::with_capacity(productions.len());
        for (lhs, rhs) in &productions {
            let l = *nt
                .get(lhs.as_str())
                .ok_or_else(|| CocfError::InvalidGrammar(format!("left side {lhs:?} is not a nonterminal")))?;
            let r = rhs
                .iter()
                .map(|s| {
                    nt.get(s.as_str())
                        .map(|&i| Symbol::N(i))
                        .or_else(|| t.get(s.as_str()).map(|&i| Symbol::T(i)))
                        .ok_or_else(|| CocfError::InvalidGrammar(format!("undeclared symbol {s:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            prods.push((l, r));
        }
        Ok(Grammar {
            nonterminals,
            terminals,
            start,
            productions: prods,
        })
    }

    /// Index-based constructor; nonterminal names clashing with terminal
    /// names are made unique by appending primes.
    pub(crate) fn from_parts(
        mut nonterminals: Vec<String>,
        terminals: Vec<String>,
        start: usize,
        productions: Vec<(usize, Vec<Symbol>)>,
    ) -> Self {
        let mut taken: HashSet<String> = terminals.iter().cloned().collect();
        for name in nonterminals.iter_mut() {
            while taken.contains(name.as_str()) {
                name.push('\'');
            }
            taken.insert(name.clone());
        }
        debug_assert!(start < nonterminals.len());
        debug_assert!(productions.iter().all(|(l, r)| *l < nonterminals.len()
            && r.iter().all(|s| match s {
                Symbol::N(i) => *i < nonterminals.len(),
                Symbol::T(i) => *i < terminals.len(),
            })));
        Grammar {
            nonterminals,
            terminals,
            start,
            productions,
        }
    }

    pub fn nonterminals(&self) -> &[String] {
        &self.nonterminals
    }

    pub fn terminals(&self) -> &[String] {
        &self.terminals
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn productions(&self) -> &[(usize, Vec<Symbol>)] {
        &self.productions
    }

    pub fn terminal_index(&self, name: &str) -> Option<usize> {
        self.terminals.iter().position(|t| t == name)
    }

    /// Nonterminals deriving some terminal word.
    pub fn productive(&self) -> Vec<bool> {
        let mut prod = vec![false; self.nonterminals.len()];
        let mut changed = true;
        while changed {
            changed = false;
            for (l, r) in &self.productions {
                if !prod[*l]
                    && r.iter().all(|s| match s {
                        Symbol::T(_) => true,
                        Symbol::N(i) => prod[*i],
                    })
                {
                    prod[*l] = true;
                    changed = true;
                }
            }
        }
        prod
    }

    /// Nonterminals deriving the empty word.
    pub fn nullable(&self) -> Vec<bool> {
        let mut null = vec![false; self.nonterminals.len()];
        let mut changed = true;
        while changed {
            changed = false;
            for (l, r) in &self.productions {
                if !null[*l] && r.iter().all(|s| matches!(s, Symbol::N(i) if null[*i])) {
                    null[*l] = true;
                    changed = true;
                }
            }
        }
        null
    }

    pub fn is_empty_language(&self) -> bool {
        !self.productive()[self.start]
    }

    pub fn generates_empty_word(&self) -> bool {
        self.nullable()[self.start]
    }

    /// Removes unproductive, then unreachable nonterminals. An empty
    /// language comes out as a lone start symbol without productions.
    pub fn trim(&self) -> Grammar {
        let prod = self.productive();
        if !prod[self.start] {
            return Grammar::from_parts(
                vec![self.nonterminals[self.start].clone()],
                self.terminals.clone(),
                0,
                Vec::new(),
            );
        }
        let useful: Vec<&(usize, Vec<Symbol>)> = self
            .productions
            .iter()
            .filter(|(l, r)| prod[*l] && r.iter().all(|s| !matches!(s, Symbol::N(i) if !prod[*i])))
            .collect();
        let mut by_lhs: HashMap<usize, Vec<&Vec<Symbol>>> = HashMap::new();
        for (l, r) in &useful {
            by_lhs.entry(*l).or_default().push(r);
        }
        let mut reach = vec![false; self.nonterminals.len()];
        reach[self.start] = true;
        let mut stack = vec![self.start];
        while let Some(a) = stack.pop() {
            for r in by_lhs.get(&a).into_iter().flatten() {
                for s in r.iter() {
                    if let Symbol::N(i) = s {
                        if !reach[*i] {
                            reach[*i] = true;
                            stack.push(*i);
                        }
                    }
                }
            }
        }
        let mut remap = vec![usize::MAX; self.nonterminals.len()];
        let mut names = Vec::new();
        for (i, n) in self.nonterminals.iter().enumerate() {
            if reach[i] {
                remap[i] = names.len();
                names.push(n.clone());
            }
        }
        let productions = useful
            .into_iter()
            .filter(|(l, _)| reach[*l])
            .map(|(l, r)| (remap[*l], r.iter().map(|s| remap_symbol(*s, &remap)).collect()))
            .collect();
        Grammar::from_parts(names, self.terminals.clone(), remap[self.start], productions)
    }

    /// Equivalent grammar whose right sides have length at most two.
    pub fn binarize(&self) -> Grammar {
        let mut names = self.nonterminals.clone();
        let mut productions = Vec::with_capacity(self.productions.len());
        for (l, r) in &self.productions {
            if r.len() <= 2 {
                productions.push((*l, r.clone()));
                continue;
            }
            // A -> X1 A1, A1 -> X2 A2, ..., A_{m-2} -> X_{m-1} X_m
            let mut lhs = *l;
            for (i, s) in r[..r.len() - 2].iter().enumerate() {
                let fresh = names.len();
                names.push(format!("{}#{}", self.nonterminals[*l], productions.len() + i));
                productions.push((lhs, vec![*s, Symbol::N(fresh)]));
                lhs = fresh;
            }
            productions.push((lhs, r[r.len() - 2..].to_vec()));
        }
        Grammar::from_parts(names, self.terminals.clone(), self.start, productions)
    }

    /// Removes duplicate productions, merges nonterminals with identical
    /// production sets and inlines nonterminals whose only production has a
    /// right side of length at most one. Preserves the language.
    pub fn simplify(&self) -> Grammar {
        let mut g = self.trim();
        loop {
            let before = (g.nonterminals.len(), g.productions.len());
            g = g.inline_short().merge_duplicates().trim();
            if (g.nonterminals.len(), g.productions.len()) == before {
                return g;
            }
        }
    }

    fn inline_short(&self) -> Grammar {
        let n = self.nonterminals.len();
        let mut count = vec![0usize; n];
        for (l, _) in &self.productions {
            count[*l] += 1;
        }
        // substitution target for inlinable nonterminals
        let mut subst: Vec<Option<Vec<Symbol>>> = vec![None; n];
        for (l, r) in &self.productions {
            if count[*l] == 1 && *l != self.start && r.len() <= 1 && !r.contains(&Symbol::N(*l)) {
                subst[*l] = Some(r.clone());
            }
        }
        // resolve chains, breaking cycles of unit productions
        let resolve = |s: Symbol| -> Vec<Symbol> {
            let mut cur = vec![s];
            let mut seen = HashSet::new();
            while let [Symbol::N(i)] = cur.as_slice() {
                match &subst[*i] {
                    Some(r) if seen.insert(*i) => cur = r.clone(),
                    _ => break,
                }
            }
            cur
        };
        let mut productions = Vec::with_capacity(self.productions.len());
        for (l, r) in &self.productions {
            if subst[*l].is_some() {
                continue;
            }
            let rhs: Vec<Symbol> = r.iter().flat_map(|&s| resolve(s)).collect();
            productions.push((*l, rhs));
        }
        // nonterminals on unresolved cycles keep their production
        let mut g = Grammar::from_parts(self.nonterminals.clone(), self.terminals.clone(), self.start, productions);
        let used: HashSet<usize> = g
            .productions
            .iter()
            .flat_map(|(_, r)| r.iter())
            .filter_map(|s| match s {
                Symbol::N(i) => Some(*i),
                _ => None,
            })
            .collect();
        for (l, r) in &self.productions {
            if subst[*l].is_some() && used.contains(l) {
                g.productions.push((*l, r.clone()));
            }
        }
        g
    }

    fn merge_duplicates(&self) -> Grammar {
        let n = self.nonterminals.len();
        let mut sets: Vec<BTreeSet<Vec<Symbol>>> = vec![BTreeSet::new(); n];
        for (l, r) in &self.productions {
            sets[*l].insert(r.clone());
        }
        let mut class: HashMap<&BTreeSet<Vec<Symbol>>, usize> = HashMap::new();
        let mut remap = vec![0; n];
        for i in 0..n {
            let rep = *class.entry(&sets[i]).or_insert(i);
            remap[i] = rep;
        }
        if remap[self.start] != self.start {
            // keep the start symbol as the class representative
            let old = remap[self.start];
            for r in remap.iter_mut() {
                if *r == old {
                    *r = self.start;
                }
            }
        }
        let mut seen = HashSet::new();
        let productions = self
            .productions
            .iter()
            .filter(|(l, _)| remap[*l] == *l)
            .map(|(l, r)| (*l, r.iter().map(|s| remap_symbol(*s, &remap)).collect::<Vec<_>>()))
            .filter(|p| seen.insert(p.clone()))
            .collect();
        Grammar::from_parts(self.nonterminals.clone(), self.terminals.clone(), self.start, productions)
    }

    /// All words of length at most `max_len`, as terminal indices.
    pub fn words_up_to(&self, max_len: usize) -> BTreeSet<Vec<usize>> {
        let n = self.nonterminals.len();
        let mut sets: Vec<HashSet<Vec<usize>>> = vec![HashSet::new(); n];
        let mut changed = true;
        while changed {
            changed = false;
            for (l, r) in &self.productions {
                let mut acc: HashSet<Vec<usize>> = HashSet::from([Vec::new()]);
                for s in r {
                    let mut next = HashSet::new();
                    match s {
                        Symbol::T(t) => {
                            for w in &acc {
                                if w.len() < max_len {
                                    let mut w = w.clone();
                                    w.push(*t);
                                    next.insert(w);
                                }
                            }
                        }
                        Symbol::N(i) => {
                            for w in &acc {
                                for v in &sets[*i] {
                                    if w.len() + v.len() <= max_len {
                                        let mut w = w.clone();
                                        w.extend_from_slice(v);
                                        next.insert(w);
                                    }
                                }
                            }
                        }
                    }
                    acc = next;
                    if acc.is_empty() {
                        break;
                    }
                }
                for w in acc {
                    if sets[*l].insert(w) {
                        changed = true;
                    }
                }
            }
        }
        sets[self.start].iter().cloned().collect()
    }

    /// [`Grammar::words_up_to`] with terminal names.
    pub fn named_words_up_to(&self, max_len: usize) -> BTreeSet<Vec<String>> {
        self.words_up_to(max_len)
            .into_iter()
            .map(|w| w.into_iter().map(|t| self.terminals[t].clone()).collect())
            .collect()
    }

    /// Same grammar with the terminal list replaced by `order`, which must
    /// contain every terminal occurring in a production.
    pub fn with_terminals(&self, order: &[String]) -> Grammar {
        let pos: Vec<Option<usize>> = self.terminals.iter().map(|t| order.iter().position(|o| o == t)).collect();
        let productions = self
            .productions
            .iter()
            .map(|(l, r)| {
                let rhs = r
                    .iter()
                    .map(|s| match s {
                        Symbol::T(t) => Symbol::T(pos[*t].expect("terminal missing from the new order")),
                        n => *n,
                    })
                    .collect();
                (*l, rhs)
            })
            .collect();
        Grammar::from_parts(self.nonterminals.clone(), order.to_vec(), self.start, productions)
    }

    pub fn size(&self) -> usize {
        self.productions.iter().map(|(_, r)| r.len() + 1).sum()
    }

    /// Membership of a word of terminal indices, by CYK over the binarized
    /// grammar with empty and unit productions closed per span.
    pub fn generates(&self, word: &[usize]) -> bool {
        let g = self.binarize();
        let n = word.len();
        let nn = g.nonterminals.len();
        // spans[i][l]: nonterminals deriving word[i..i + l]
        let mut spans = vec![vec![vec![false; nn]; n + 1]; n + 1];
        for l in 0..=n {
            for i in 0..=n - l {
                loop {
                    let mut changed = false;
                    for (a, rhs) in &g.productions {
                        if spans[i][l][*a] {
                            continue;
                        }
                        let derives = |s: &Symbol, from: usize, len: usize| match s {
                            Symbol::T(t) => len == 1 && word[from] == *t,
                            Symbol::N(x) => spans[from][len][*x],
                        };
                        let hit = match rhs.as_slice() {
                            [] => l == 0,
                            [x] => derives(x, i, l),
                            [x, y] => (0..=l).any(|m| derives(x, i, m) && derives(y, i + m, l - m)),
                            _ => unreachable!("binarized"),
                        };
                        if hit {
                            spans[i][l][*a] = true;
                            changed = true;
                        }
                    }
                    if !changed {
                        break;
                    }
                }
            }
        }
        spans[0][n][g.start]
    }
}

fn remap_symbol(s: Symbol, remap: &[usize]) -> Symbol {
    match s {
        Symbol::N(i) => Symbol::N(remap[i]),
        t => t,
    }
}

impl From<Grammar> for GrammarRepr {
    fn from(g: Grammar) -> Self {
        let name = |s: &Symbol| match s {
            Symbol::N(i) => g.nonterminals[*i].clone(),
            Symbol::T(i) => g.terminals[*i].clone(),
        };
        GrammarRepr {
            productions: g
                .productions
                .iter()
                .map(|(l, r)| (g.nonterminals[*l].clone(), r.iter().map(name).collect()))
                .collect(),
            start: g.nonterminals[g.start].clone(),
            nonterminals: g.nonterminals.clone(),
            terminals: g.terminals.clone(),
        }
    }
}

impl TryFrom<GrammarRepr> for Grammar {
    type Error = CocfError;

    fn try_from(r: GrammarRepr) -> Result<Self, CocfError> {
        Grammar::new(r.nonterminals, r.terminals, &r.start, r.productions)
    }
}

/// Interns keyed nonterminals while a construction emits productions.
pub(crate) struct GrammarBuilder<K> {
    index: HashMap<K, usize>,
    names: Vec<String>,
    productions: Vec<(usize, Vec<Symbol>)>,
}

impl<K: Hash + Eq> GrammarBuilder<K> {
    pub fn new() -> Self {
        GrammarBuilder {
            index: HashMap::new(),
            names: Vec::new(),
            productions: Vec::new(),
        }
    }

    /// Index of `key`, and whether it was newly created.
    pub fn intern(&mut self, key: K, name: impl FnOnce() -> String) -> (usize, bool) {
        if let Some(&i) = self.index.get(&key) {
            return (i, false);
        }
        let i = self.names.len();
        self.names.push(name());
        self.index.insert(key, i);
        (i, true)
    }

    pub fn get(&self, key: &K) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub fn push(&mut self, lhs: usize, rhs: Vec<Symbol>) {
        self.productions.push((lhs, rhs));
    }

    pub fn finish(self, terminals: Vec<String>, start: usize) -> Grammar {
        Grammar::from_parts(self.names, terminals, start, self.productions)
    }
}

/// Shorthand used by fixtures and tests: productions written as
/// `"S -> a S b | "` lines, symbols separated by spaces.
pub fn parse_grammar(terminals: &[&str], start: &str, rules: &[&str]) -> Result<Grammar, CocfError> {
    let mut nonterminals: Vec<String> = Vec::new();
    let mut productions = Vec::new();
    for line in rules {
        let (lhs, rhs) = line
            .split_once("->")
            .ok_or_else(|| CocfError::InvalidGrammar(format!("rule without '->': {line:?}")))?;
        let lhs = lhs.trim().to_string();
        if !nonterminals.contains(&lhs) {
            nonterminals.push(lhs.clone());
        }
        for alt in rhs.split('|') {
            productions.push((lhs.clone(), alt.split_whitespace().map(str::to_string).collect()));
        }
    }
    Grammar::new(nonterminals, terminals.iter().map(|s| s.to_string()).collect(), start, productions)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub fn anbn() -> Grammar {
        parse_grammar(&["a", "b"], "S", &["S -> a S b | "]).unwrap()
    }

    pub fn w(s: &str) -> Vec<String> {
        s.split_whitespace().map(str::to_string).collect()
    }

    #[test]
    fn enumerates_anbn() {
        let words = anbn().named_words_up_to(6);
        let expected: BTreeSet<Vec<String>> = ["", "a b", "a a b b", "a a a b b b"].iter().map(|s| w(s)).collect();
        assert_eq!(words, expected);
    }

    #[test]
    fn cyk_agrees_with_enumeration() {
        let dyck = parse_grammar(&["(", ")"], "S", &["S -> S S | ( S ) | ", "T -> S"]).unwrap();
        let units = parse_grammar(&["a", "b"], "S", &["S -> A | A b A", "A -> B", "B -> a B | "]).unwrap();
        for g in [anbn(), dyck, units] {
            let words = g.words_up_to(6);
            let nt = g.terminals().len();
            let mut all: Vec<Vec<usize>> = vec![vec![]];
            for _ in 0..6 {
                let next: Vec<Vec<usize>> = all
                    .iter()
                    .filter(|v| v.len() == all.last().unwrap().len())
                    .flat_map(|v| (0..nt).map(move |t| [v.clone(), vec![t]].concat()))
                    .collect();
                all.extend(next);
            }
            for x in &all {
                assert_eq!(g.generates(x), words.contains(x), "{x:?}");
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let g = anbn();
        let text = serde_json::to_string(&g).unwrap();
        assert_eq!(
            text,
            r#"{"nonterminals":["S"],"terminals":["a","b"],"start":"S","productions":[["S",["a","S","b"]],["S",[]]]}"#
        );
        let back: Grammar = serde_json::from_str(&text).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn rejects_bad_grammars() {
        assert!(Grammar::new(w("S"), w("S"), "S", vec![]).is_err());
        assert!(Grammar::new(w("S"), w("a"), "T", vec![]).is_err());
        assert!(Grammar::new(w("S"), w("a"), "S", vec![("S".into(), w("a b"))]).is_err());
    }

    #[test]
    fn trim_binarize_simplify_preserve_language() {
        let g = parse_grammar(
            &["a", "b", "c"],
            "S",
            &["S -> A B C a | U", "A -> a A | ", "B -> b | C", "C -> c C c | b", "U -> U a", "V -> a"],
        )
        .unwrap();
        let words = g.words_up_to(7);
        let t = g.trim();
        assert_eq!(t.nonterminals().len(), 4);
        assert_eq!(t.words_up_to(7), words);
        let b = g.binarize();
        assert!(b.productions().iter().all(|(_, r)| r.len() <= 2));
        assert_eq!(b.words_up_to(7), words);
        assert_eq!(g.simplify().words_up_to(7), words);
    }

    #[test]
    fn empty_language_trims_to_start() {
        let g = parse_grammar(&["a"], "S", &["S -> S a"]).unwrap();
        assert!(g.is_empty_language());
        let t = g.trim();
        assert!(t.productions().is_empty());
        assert!(t.words_up_to(4).is_empty());
    }
}
