//! Parikh images. Nonterminals are processed one strongly connected
//! component at a time; inside a component the least solution of the
//! commutative equation system is reached by Newton iteration, each step
//! solving a linear system by elimination over semilinear sets.

use std::collections::HashMap;

use super::grammar::{Grammar, Symbol};
use super::semilinear::SemilinearSet;

/// `Ψ(L(g))` in `N^k` with `k` the number of terminals, coordinates in
/// terminal order.
pub fn parikh_image(g: &Grammar) -> SemilinearSet {
    let k = g.terminals().len();
    let g = g.simplify();
    if g.is_empty_language() {
        return SemilinearSet::empty(k);
    }
    let n = g.nonterminals().len();
    let mut by_lhs: Vec<Vec<&Vec<Symbol>>> = vec![Vec::new(); n];
    for (l, r) in g.productions() {
        by_lhs[*l].push(r);
    }
    let mut value: Vec<Option<SemilinearSet>> = vec![None; n];
    for scc in sccs(&by_lhs) {
        let in_scc: HashMap<usize, usize> = scc.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let recursive = scc.len() > 1
            || by_lhs[scc[0]].iter().any(|r| r.contains(&Symbol::N(scc[0])));
        if !recursive {
            let v = eval_rules(&by_lhs[scc[0]], k, &|s| lookup(s, &value, None, &in_scc));
            value[scc[0]] = Some(v);
            continue;
        }
        let sol = newton(&scc, &in_scc, &by_lhs, &value, k);
        for (a, v) in scc.iter().zip(sol) {
            value[*a] = Some(v);
        }
    }
    value[g.start()].take().expect("start evaluated")
}

fn lookup(
    s: &Symbol,
    value: &[Option<SemilinearSet>],
    local: Option<&[SemilinearSet]>,
    in_scc: &HashMap<usize, usize>,
) -> SemilinearSet {
    match s {
        Symbol::T(_) => unreachable!("terminals handled by caller"),
        Symbol::N(i) => match (in_scc.get(i), local) {
            (Some(&j), Some(l)) => l[j].clone(),
            (Some(_), None) => SemilinearSet::empty(0),
            (None, _) => value[*i].clone().expect("dependencies evaluated first"),
        },
    }
}

fn term_value(s: &Symbol, k: usize, get: &dyn Fn(&Symbol) -> SemilinearSet) -> SemilinearSet {
    match s {
        Symbol::T(t) => SemilinearSet::unit(k, *t),
        n => {
            let v = get(n);
            if v.k != k {
                // unknown local value stands for the empty set
                SemilinearSet::empty(k)
            } else {
                v
            }
        }
    }
}

fn eval_rules(rules: &[&Vec<Symbol>], k: usize, get: &dyn Fn(&Symbol) -> SemilinearSet) -> SemilinearSet {
    let mut acc = SemilinearSet::empty(k);
    for r in rules {
        let mut prod = SemilinearSet::zero(k);
        for s in r.iter() {
            prod = prod.sum(&term_value(s, k, get));
            if prod.is_empty() {
                break;
            }
        }
        acc = acc.union(&prod);
    }
    acc
}

fn newton(
    scc: &[usize],
    in_scc: &HashMap<usize, usize>,
    by_lhs: &[Vec<&Vec<Symbol>>],
    value: &[Option<SemilinearSet>],
    k: usize,
) -> Vec<SemilinearSet> {
    let m = scc.len();
    let f = |nu: Option<&[SemilinearSet]>| -> Vec<SemilinearSet> {
        scc.iter()
            .map(|&a| eval_rules(&by_lhs[a], k, &|s| lookup(s, value, nu, in_scc)))
            .collect()
    };
    let mut nu = f(None);
    for _ in 0..m {
        let fnu = f(Some(&nu));
        if fnu.iter().zip(&nu).all(|(x, y)| x.components.iter().all(|c| y.components.iter().any(|d| c.subsumed_by(d)))) {
            break;
        }
        // Jacobian at nu
        let mut jac: Vec<HashMap<usize, SemilinearSet>> = vec![HashMap::new(); m];
        for (i, &a) in scc.iter().enumerate() {
            for r in &by_lhs[a] {
                for (pos, s) in r.iter().enumerate() {
                    let Symbol::N(b) = s else { continue };
                    let Some(&j) = in_scc.get(b) else { continue };
                    let mut prod = SemilinearSet::zero(k);
                    for (q, t) in r.iter().enumerate() {
                        if q != pos {
                            prod = prod.sum(&term_value(t, k, &|s| lookup(s, value, Some(&nu), in_scc)));
                        }
                    }
                    if prod.is_empty() {
                        continue;
                    }
                    let e = jac[i].entry(j).or_insert_with(|| SemilinearSet::empty(k));
                    *e = e.union(&prod);
                }
            }
        }
        let sol = solve_linear(jac, fnu, k);
        nu = nu.iter().zip(sol).map(|(a, b)| a.union(&b)).collect();
    }
    nu
}

/// Least solution of `X = J X ∪ c` by Gauss–Jordan elimination.
fn solve_linear(mut jac: Vec<HashMap<usize, SemilinearSet>>, mut c: Vec<SemilinearSet>, k: usize) -> Vec<SemilinearSet> {
    let m = c.len();
    for i in 0..m {
        let s = match jac[i].remove(&i) {
            Some(d) => d.star(),
            None => SemilinearSet::zero(k),
        };
        let row: Vec<(usize, SemilinearSet)> = jac[i].drain().map(|(j, v)| (j, s.sum(&v))).collect();
        jac[i] = row.iter().cloned().collect();
        c[i] = s.sum(&c[i]);
        for r in 0..m {
            if r == i {
                continue;
            }
            let Some(coef) = jac[r].remove(&i) else { continue };
            for (j, v) in &row {
                let add = coef.sum(v);
                let e = jac[r].entry(*j).or_insert_with(|| SemilinearSet::empty(k));
                *e = e.union(&add);
            }
            c[r] = c[r].union(&coef.sum(&c[i]));
        }
    }
    c
}

/// Strongly connected components of the nonterminal dependency graph,
/// dependencies before dependents.
fn sccs(by_lhs: &[Vec<&Vec<Symbol>>]) -> Vec<Vec<usize>> {
    let n = by_lhs.len();
    let succ: Vec<Vec<usize>> = by_lhs
        .iter()
        .map(|rs| {
            rs.iter()
                .flat_map(|r| r.iter())
                .filter_map(|s| match s {
                    Symbol::N(i) => Some(*i),
                    _ => None,
                })
                .collect()
        })
        .collect();
    // iterative Tarjan
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut counter = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if *pos < succ[v].len() {
                let w = succ[v][*pos];
                *pos += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(u, _)) = call.last() {
                    low[u] = low[u].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    out.push(comp);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocf::grammar::parse_grammar;
    use crate::cocf::grammar::tests::anbn;
    use crate::cocf::semilinear::{box_points, LinearSet};
    use std::collections::BTreeSet;

    /// Parikh vectors of all words whose every letter count is at most
    /// `bound`; words up to `k * bound` letters cover them.
    fn oracle(g: &Grammar, bound: u64) -> BTreeSet<Vec<u64>> {
        let k = g.terminals().len();
        g.words_up_to(k * bound as usize)
            .into_iter()
            .map(|w| {
                let mut v = vec![0u64; k];
                for t in w {
                    v[t] += 1;
                }
                v
            })
            .filter(|v| v.iter().all(|&x| x <= bound))
            .collect()
    }

    fn check(g: &Grammar, bound: u64) -> SemilinearSet {
        let p = parikh_image(g);
        assert_eq!(p.members_in_box(bound), oracle(g, bound), "grammar {g:?} gave {p:?}");
        let k = g.terminals().len();
        let expected = oracle(g, bound);
        for v in box_points(k, bound) {
            assert_eq!(p.contains(&v).unwrap(), expected.contains(&v));
        }
        p
    }

    #[test]
    fn astar() {
        let g = parse_grammar(&["a"], "S", &["S -> a S | "]).unwrap();
        let p = check(&g, 6);
        assert_eq!(p.components, vec![LinearSet::new(vec![0], vec![vec![1]])]);
    }

    #[test]
    fn anbn_image() {
        let p = check(&anbn(), 6);
        assert_eq!(p.components, vec![LinearSet::new(vec![0, 0], vec![vec![1, 1]])]);
    }

    #[test]
    fn not_two() {
        let g = parse_grammar(&["a1"], "S", &["S -> | a1 | a1 a1 a1 A", "A -> | a1 A"]).unwrap();
        let p = check(&g, 8);
        assert!(!p.contains(&[2]).unwrap());
    }

    #[test]
    fn dyck_and_mutual_recursion() {
        check(&parse_grammar(&["(", ")"], "S", &["S -> ( S ) S | "]).unwrap(), 5);
        check(
            &parse_grammar(&["a", "b", "c"], "S", &["S -> a T | c", "T -> b S S | S b"]).unwrap(),
            4,
        );
        check(
            &parse_grammar(&["a", "b"], "S", &["S -> A B | B", "A -> a A a | b", "B -> B B | a | A"]).unwrap(),
            5,
        );
    }

    #[test]
    fn empty_language() {
        let g = parse_grammar(&["a"], "S", &["S -> S a"]).unwrap();
        assert!(parikh_image(&g).is_empty());
    }
}
