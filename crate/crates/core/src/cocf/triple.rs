//! Shared core of the two triple constructions: nonterminals `<p, Z, q>`
//! meaning "symbol `Z` can be consumed going from state `p` to state `q`".

use std::collections::{HashMap, HashSet, VecDeque};

use super::grammar::{Grammar, GrammarBuilder, Symbol};

/// `<from, lhs, q>` derives `label <to, rhs[0], s> <s, rhs[1], q>`, with
/// `q = to` when `rhs` is empty. At most two right-hand symbols.
#[derive(Debug, Clone)]
pub(crate) struct TripleRule {
    pub lhs: usize,
    pub from: usize,
    pub to: usize,
    pub label: Option<usize>,
    pub rhs: Vec<usize>,
}

type Item = (usize, usize, usize);

pub(crate) struct TripleEngine {
    rules: Vec<TripleRule>,
    by_lhs_from: HashMap<(usize, usize), Vec<usize>>,
    productive: HashSet<Item>,
    out: HashMap<(usize, usize), Vec<usize>>,
}

impl TripleEngine {
    pub fn new(rules: Vec<TripleRule>) -> Self {
        let mut by_lhs_from: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        let mut first: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        let mut second: HashMap<usize, Vec<usize>> = HashMap::new();
        let mut queue: VecDeque<Item> = VecDeque::new();
        for (i, r) in rules.iter().enumerate() {
            assert!(r.rhs.len() <= 2, "triple rules take at most two symbols");
            by_lhs_from.entry((r.lhs, r.from)).or_default().push(i);
            match r.rhs.len() {
                0 => queue.push_back((r.from, r.lhs, r.to)),
                _ => first.entry((r.to, r.rhs[0])).or_default().push(i),
            }
            if r.rhs.len() == 2 {
                second.entry(r.rhs[1]).or_default().push(i);
            }
        }
        let mut productive: HashSet<Item> = HashSet::new();
        let mut out: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        while let Some(item) = queue.pop_front() {
            if !productive.insert(item) {
                continue;
            }
            let (x, y_sym, y) = item;
            out.entry((x, y_sym)).or_default().push(y);
            for &ri in first.get(&(x, y_sym)).into_iter().flatten() {
                let r = &rules[ri];
                if r.rhs.len() == 1 {
                    queue.push_back((r.from, r.lhs, y));
                } else if let Some(qs) = out.get(&(y, r.rhs[1])) {
                    for &q in qs {
                        queue.push_back((r.from, r.lhs, q));
                    }
                }
            }
            for &ri in second.get(&y_sym).into_iter().flatten() {
                let r = &rules[ri];
                if productive.contains(&(r.to, r.rhs[0], x)) {
                    queue.push_back((r.from, r.lhs, y));
                }
            }
        }
        TripleEngine {
            rules,
            by_lhs_from,
            productive,
            out,
        }
    }

    /// Grammar with a fresh start symbol deriving each productive start
    /// item; only items reachable from there are emitted.
    pub fn grammar(
        &self,
        starts: &[Item],
        terminals: Vec<String>,
        name: impl Fn(usize, usize, usize) -> String,
    ) -> Grammar {
        let mut b: GrammarBuilder<Option<Item>> = GrammarBuilder::new();
        let (start, _) = b.intern(None, || "S'".into());
        let mut queue: VecDeque<Item> = VecDeque::new();
        for &it in starts {
            if self.productive.contains(&it) {
                let (i, fresh) = b.intern(Some(it), || name(it.0, it.1, it.2));
                if fresh {
                    queue.push_back(it);
                }
                b.push(start, vec![Symbol::N(i)]);
            }
        }
        while let Some(item @ (p, z, q)) = queue.pop_front() {
            let lhs = b.get(&Some(item)).expect("interned");
            for &ri in self.by_lhs_from.get(&(z, p)).into_iter().flatten() {
                let r = &self.rules[ri];
                let label: Vec<Symbol> = r.label.map(Symbol::T).into_iter().collect();
                let mut emit = |b: &mut GrammarBuilder<Option<Item>>, items: &[Item]| {
                    let mut rhs = label.clone();
                    for &it in items {
                        let (i, fresh) = b.intern(Some(it), || name(it.0, it.1, it.2));
                        if fresh {
                            queue.push_back(it);
                        }
                        rhs.push(Symbol::N(i));
                    }
                    b.push(lhs, rhs);
                };
                match r.rhs.len() {
                    0 => {
                        if r.to == q {
                            emit(&mut b, &[]);
                        }
                    }
                    1 => {
                        let it = (r.to, r.rhs[0], q);
                        if self.productive.contains(&it) {
                            emit(&mut b, &[it]);
                        }
                    }
                    _ => {
                        for &s in self.out.get(&(r.to, r.rhs[0])).into_iter().flatten() {
                            let it2 = (s, r.rhs[1], q);
                            if self.productive.contains(&it2) {
                                emit(&mut b, &[(r.to, r.rhs[0], s), it2]);
                            }
                        }
                    }
                }
            }
        }
        b.finish(terminals, start)
    }
}
