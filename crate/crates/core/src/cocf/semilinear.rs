use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::CocfError;

pub type Vector = Vec<u64>;

/// `{base + Σ x_i periods[i] : x_i ∈ N}`; periods are nonzero, sorted and
/// distinct.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LinearSet {
    pub base: Vector,
    pub periods: Vec<Vector>,
}

impl LinearSet {
    pub fn new(base: Vector, periods: Vec<Vector>) -> Self {
        let mut periods: Vec<Vector> = periods.into_iter().filter(|p| p.iter().any(|&x| x != 0)).collect();
        periods.sort();
        periods.dedup();
        LinearSet { base, periods }
    }

    pub fn point(base: Vector) -> Self {
        LinearSet { base, periods: vec![] }
    }

    pub fn dim(&self) -> usize {
        self.base.len()
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        match sub(v, &self.base) {
            Some(r) => in_monoid(&r, &self.periods),
            None => false,
        }
    }

    /// Sufficient test for `self ⊆ other`.
    pub fn subsumed_by(&self, other: &LinearSet) -> bool {
        other.contains(&self.base) && self.periods.iter().all(|p| in_monoid(p, &other.periods))
    }

    /// Drops periods generated by the remaining ones.
    pub fn reduce(mut self) -> Self {
        let mut i = 0;
        while i < self.periods.len() {
            let p = self.periods.remove(i);
            if in_monoid(&p, &self.periods) {
                continue;
            }
            self.periods.insert(i, p);
            i += 1;
        }
        self
    }

    /// Members with every coordinate at most `bound`.
    pub fn members_in_box(&self, bound: u64) -> BTreeSet<Vector> {
        let mut out = BTreeSet::new();
        if self.base.iter().any(|&x| x > bound) {
            return out;
        }
        let mut seen = HashSet::new();
        let mut stack = vec![self.base.clone()];
        while let Some(v) = stack.pop() {
            if !seen.insert(v.clone()) {
                continue;
            }
            for p in &self.periods {
                let w: Vector = v.iter().zip(p).map(|(a, b)| a + b).collect();
                if w.iter().all(|&x| x <= bound) {
                    stack.push(w);
                }
            }
            out.insert(v);
        }
        out
    }
}

fn sub(v: &[u64], b: &[u64]) -> Option<Vector> {
    v.iter().zip(b).map(|(x, y)| x.checked_sub(*y)).collect()
}

/// `v ∈ periods*`, by search over coefficients bounded by the entries of
/// `v`; periods are nonzero so every coefficient is at most `max(v)`.
pub fn in_monoid(v: &[u64], periods: &[Vector]) -> bool {
    fn go(v: &[u64], periods: &[Vector], failed: &mut HashSet<(usize, Vector)>) -> bool {
        if v.iter().all(|&x| x == 0) {
            return true;
        }
        let Some(p) = periods.first() else {
            return false;
        };
        if failed.contains(&(periods.len(), v.to_vec())) {
            return false;
        }
        let mut cur = v.to_vec();
        loop {
            if go(&cur, &periods[1..], failed) {
                return true;
            }
            match sub(&cur, p) {
                Some(next) => cur = next,
                None => break,
            }
        }
        failed.insert((periods.len(), v.to_vec()));
        false
    }
    go(v, periods, &mut HashSet::new())
}

/// Finite union of linear sets of a common dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SemilinearRepr")]
pub struct SemilinearSet {
    pub k: usize,
    pub components: Vec<LinearSet>,
}

#[derive(Deserialize)]
struct SemilinearRepr {
    k: usize,
    components: Vec<LinearSet>,
}

impl TryFrom<SemilinearRepr> for SemilinearSet {
    type Error = CocfError;

    fn try_from(r: SemilinearRepr) -> Result<Self, CocfError> {
        SemilinearSet::new(r.k, r.components)
    }
}

impl SemilinearSet {
    pub fn new(k: usize, components: Vec<LinearSet>) -> Result<Self, CocfError> {
        for c in &components {
            if c.base.len() != k || c.periods.iter().any(|p| p.len() != k) {
                return Err(CocfError::DimensionMismatch { expected: k, found: c.base.len() });
            }
        }
        Ok(SemilinearSet {
            k,
            components: components.into_iter().map(|c| LinearSet::new(c.base, c.periods)).collect(),
        })
    }

    pub fn empty(k: usize) -> Self {
        SemilinearSet { k, components: vec![] }
    }

    /// `{0}`.
    pub fn zero(k: usize) -> Self {
        SemilinearSet {
            k,
            components: vec![LinearSet::point(vec![0; k])],
        }
    }

    /// `{e_i}`.
    pub fn unit(k: usize, i: usize) -> Self {
        let mut v = vec![0; k];
        v[i] = 1;
        SemilinearSet {
            k,
            components: vec![LinearSet::point(v)],
        }
    }

    /// All of `N^k`.
    pub fn universe(k: usize) -> Self {
        let periods = (0..k)
            .map(|i| {
                let mut v = vec![0; k];
                v[i] = 1;
                v
            })
            .collect();
        SemilinearSet {
            k,
            components: vec![LinearSet::new(vec![0; k], periods)],
        }
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Some member, if any; every base is one.
    pub fn witness(&self) -> Option<&Vector> {
        self.components.first().map(|c| &c.base)
    }

    pub fn contains(&self, v: &[u64]) -> Result<bool, CocfError> {
        if v.len() != self.k {
            return Err(CocfError::DimensionMismatch { expected: self.k, found: v.len() });
        }
        Ok(self.components.iter().any(|c| c.contains(v)))
    }

    pub fn union(&self, other: &SemilinearSet) -> SemilinearSet {
        debug_assert_eq!(self.k, other.k);
        let mut components = self.components.clone();
        components.extend(other.components.iter().cloned());
        SemilinearSet { k: self.k, components }.simplify()
    }

    /// Minkowski sum.
    pub fn sum(&self, other: &SemilinearSet) -> SemilinearSet {
        debug_assert_eq!(self.k, other.k);
        let mut components = Vec::with_capacity(self.components.len() * other.components.len());
        for a in &self.components {
            for b in &other.components {
                let base = a.base.iter().zip(&b.base).map(|(x, y)| x + y).collect();
                let mut periods = a.periods.clone();
                periods.extend(b.periods.iter().cloned());
                components.push(LinearSet::new(base, periods));
            }
        }
        SemilinearSet { k: self.k, components }.simplify()
    }

    /// Smallest superset of `{0}` closed under adding members of `self`.
    pub fn star(&self) -> SemilinearSet {
        let mut acc = SemilinearSet::zero(self.k);
        for c in &self.components {
            let s = if c.base.iter().all(|&x| x == 0) {
                SemilinearSet {
                    k: self.k,
                    components: vec![c.clone()],
                }
            } else {
                let mut periods = c.periods.clone();
                periods.push(c.base.clone());
                SemilinearSet {
                    k: self.k,
                    components: vec![LinearSet::point(vec![0; self.k]), LinearSet::new(c.base.clone(), periods)],
                }
            };
            acc = acc.sum(&s);
        }
        acc
    }

    /// Canonicalizes components and drops those contained in another.
    pub fn simplify(self) -> SemilinearSet {
        let mut comps: Vec<LinearSet> = self
            .components
            .into_iter()
            .map(LinearSet::reduce)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        // larger period sets first, so that generic components absorb special ones
        comps.sort_by(|a, b| b.periods.len().cmp(&a.periods.len()).then(a.cmp(b)));
        let mut keep = vec![true; comps.len()];
        for i in 0..comps.len() {
            for j in 0..comps.len() {
                if i != j && keep[j] && comps[i].subsumed_by(&comps[j]) {
                    keep[i] = false;
                    break;
                }
            }
        }
        let mut components: Vec<LinearSet> = comps.into_iter().zip(keep).filter_map(|(c, k)| k.then_some(c)).collect();
        if merge_steps(&mut components) {
            return SemilinearSet { k: self.k, components }.simplify();
        }
        components.sort();
        SemilinearSet { k: self.k, components }
    }

    /// Members with every coordinate at most `bound`.
    pub fn members_in_box(&self, bound: u64) -> BTreeSet<Vector> {
        self.components.iter().flat_map(|c| c.members_in_box(bound)).collect()
    }
}

/// Replaces `(b + P*) ∪ (b + p + (P ∪ {p})*)` by `b + (P ∪ {p})*`.
fn merge_steps(comps: &mut Vec<LinearSet>) -> bool {
    for i in 0..comps.len() {
        for j in 0..comps.len() {
            if i == j {
                continue;
            }
            let (a, b) = (&comps[i], &comps[j]);
            let Some(p) = sub(&b.base, &a.base) else { continue };
            if !b.periods.contains(&p) {
                continue;
            }
            let mut with_p = a.periods.clone();
            with_p.push(p);
            let merged = LinearSet::new(a.base.clone(), with_p);
            if merged.periods == b.periods {
                comps[i] = merged;
                comps.swap_remove(j);
                return true;
            }
        }
    }
    false
}

/// All of `[0, bound]^k`.
pub fn box_points(k: usize, bound: u64) -> Vec<Vector> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=bound).map(move |x| {
                    let mut v = v.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}
