use std::collections::{BTreeMap, HashMap};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::extension::GkpInstance;
use crate::group::{GeneratorWord, GroupDescriptor, GroupElement};
use crate::hardness::ExponentialExpression;
use crate::knapsack::KnapsackInstance;
use crate::linear::solve_linear_nat;
use crate::rational::Automaton;

/// Limits for the brute-force oracles: the exponent box `[0, box_bound]`,
/// the number of points a search may visit, and a wall-clock limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub box_bound: u64,
    pub cap: u64,
    pub wall_clock: Duration,
}

impl OracleBudget {
    pub fn new(box_bound: u64, cap: u64, wall_clock: Duration) -> Result<Self, HarnessError> {
        if box_bound == 0 || cap == 0 || wall_clock.is_zero() {
            return Err(HarnessError::InvalidBudget(
                "box, cap and wall-clock limit must be positive".into(),
            ));
        }
        Ok(OracleBudget {
            box_bound,
            cap,
            wall_clock,
        })
    }

    pub fn with_box(self, box_bound: u64) -> Self {
        OracleBudget { box_bound, ..self }
    }

    fn admit(&self, base: u64, exp: usize) -> Result<(), HarnessError> {
        let needed = BigInt::from(base).pow(exp as u32);
        if needed > BigInt::from(self.cap) {
            return Err(HarnessError::CapExceeded {
                needed: needed.to_string(),
                cap: self.cap,
            });
        }
        Ok(())
    }

    fn clock(&self) -> Clock {
        Clock {
            start: Instant::now(),
            limit: self.wall_clock,
            ticks: 0,
        }
    }
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            box_bound: 6,
            cap: 1 << 24,
            wall_clock: Duration::from_secs(60),
        }
    }
}

struct Clock {
    start: Instant,
    limit: Duration,
    ticks: u32,
}

impl Clock {
    fn tick(&mut self) -> Result<(), HarnessError> {
        self.ticks = self.ticks.wrapping_add(1);
        if self.ticks.is_multiple_of(1024) && self.start.elapsed() > self.limit {
            return Err(HarnessError::Timeout(self.limit));
        }
        Ok(())
    }
}

/// Answer of a bounded search. `NoWithinBox` says nothing about solutions
/// outside the box.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "answer", rename_all = "kebab-case")]
pub enum BoxAnswer {
    Yes { witness: Vec<u64> },
    NoWithinBox { bound: u64 },
}

type Visit<'a> = dyn FnMut(&[usize], &GroupElement) -> bool + 'a;

/// Depth-first walk over `start * powers[0][e_0] * powers[1][e_1] * ...`,
/// stopping once `visit` returns true. `choice` then holds the indices.
fn walk(
    prefix: &GroupElement,
    powers: &[Vec<GroupElement>],
    choice: &mut Vec<usize>,
    clock: &mut Clock,
    visit: &mut Visit,
) -> Result<bool, HarnessError> {
    let depth = choice.len();
    if depth == powers.len() {
        clock.tick()?;
        return Ok(visit(choice, prefix));
    }
    for (e, p) in powers[depth].iter().enumerate() {
        choice.push(e);
        if walk(&prefix.mul(p)?, powers, choice, clock, visit)? {
            return Ok(true);
        }
        choice.pop();
    }
    Ok(false)
}

fn power_table(g: &GroupElement, exps: impl Iterator<Item = i64>) -> Result<Vec<GroupElement>, HarnessError> {
    Ok(exps.map(|e| g.pow_i64(e)).collect::<Result<_, _>>()?)
}

/// Exhaustive subset sum: some `eps` in `{0,1}^k` with
/// `g_1^{eps_1} ... g_k^{eps_k} = target`. Exact, since the search space is
/// finite.
pub fn brute_force_subsetsum(
    inst: &KnapsackInstance,
    budget: &OracleBudget,
) -> Result<Option<Vec<bool>>, HarnessError> {
    inst.validate()?;
    budget.admit(2, inst.k())?;
    let powers: Vec<_> = inst
        .bases
        .iter()
        .map(|g| power_table(g, 0..2))
        .collect::<Result<_, _>>()?;
    let mut choice = Vec::new();
    let found = walk(
        &inst.group.identity(),
        &powers,
        &mut choice,
        &mut budget.clock(),
        &mut |_, x| *x == inst.target,
    )?;
    if !found {
        return Ok(None);
    }
    let witness: Vec<bool> = choice.iter().map(|&e| e == 1).collect();
    let exps: Vec<BigInt> = choice.iter().map(|&e| BigInt::from(e)).collect();
    if !inst.is_solution(&exps)? {
        return Err(HarnessError::InvalidInstance("subset witness failed re-evaluation".into()));
    }
    Ok(Some(witness))
}

/// Exhaustive knapsack search over `[0, box_bound]^k`.
pub fn brute_force_knapsack(
    inst: &KnapsackInstance,
    budget: &OracleBudget,
) -> Result<BoxAnswer, HarnessError> {
    inst.validate()?;
    let b = budget.box_bound;
    budget.admit(b + 1, inst.k())?;
    let top = i64::try_from(b).map_err(|_| HarnessError::InvalidBudget("box too large".into()))?;
    let powers: Vec<_> = inst
        .bases
        .iter()
        .map(|g| power_table(g, 0..=top))
        .collect::<Result<_, _>>()?;
    let mut choice = Vec::new();
    let found = walk(
        &inst.group.identity(),
        &powers,
        &mut choice,
        &mut budget.clock(),
        &mut |_, x| *x == inst.target,
    )?;
    if !found {
        return Ok(BoxAnswer::NoWithinBox { bound: b });
    }
    let exps: Vec<BigInt> = choice.iter().map(|&e| BigInt::from(e)).collect();
    if !inst.is_solution(&exps)? {
        return Err(HarnessError::InvalidInstance("box witness failed re-evaluation".into()));
    }
    Ok(BoxAnswer::Yes {
        witness: choice.iter().map(|&e| e as u64).collect(),
    })
}

/// Is `target = g_1^{e_1} ... g_k^{e_k}` with integer `e_i` in
/// `[-bound, bound]`? Meet in the middle over the two halves of the product.
pub fn bounded_product_membership(
    group: &GroupDescriptor,
    bases: &[GroupElement],
    target: &GroupElement,
    bound: u64,
    budget: &OracleBudget,
) -> Result<Option<Vec<i64>>, HarnessError> {
    for g in bases.iter().chain(std::iter::once(target)) {
        group.check(g)?;
    }
    let b = i64::try_from(bound).map_err(|_| HarnessError::InvalidBudget("box too large".into()))?;
    let side = 2 * bound + 1;
    let half = bases.len() / 2;
    budget.admit(side, bases.len() - half)?;
    let powers: Vec<_> = bases
        .iter()
        .map(|g| power_table(g, -b..=b))
        .collect::<Result<_, _>>()?;
    let (left, right) = powers.split_at(half);
    let mut clock = budget.clock();
    let id = group.identity();

    let mut table: HashMap<GroupElement, Vec<usize>> = HashMap::new();
    walk(&id, left, &mut Vec::new(), &mut clock, &mut |c, x| {
        table.entry(x.clone()).or_insert_with(|| c.to_vec());
        false
    })?;

    // left * right = target  <=>  left = target * right^-1
    let mut hit: Option<Vec<usize>> = None;
    let mut failure: Option<HarnessError> = None;
    walk(&id, right, &mut Vec::new(), &mut clock, &mut |c, x| {
        let need = match x.inv().and_then(|xi| target.mul(&xi)) {
            Ok(v) => v,
            Err(e) => {
                failure = Some(e.into());
                return true;
            }
        };
        match table.get(&need) {
            Some(l) => {
                hit = Some(l.iter().chain(c).copied().collect());
                true
            }
            None => false,
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    let Some(idx) = hit else { return Ok(None) };
    let exps: Vec<i64> = idx.iter().map(|&i| i as i64 - b).collect();
    let mut acc = id;
    for (g, &e) in bases.iter().zip(&exps) {
        acc = acc.mul(&g.pow_i64(e)?)?;
    }
    if acc != *target {
        return Err(HarnessError::InvalidInstance("product witness failed re-evaluation".into()));
    }
    Ok(Some(exps))
}

/// Some assignment in `[-bound, bound]` per variable with `E = g`.
pub fn brute_force_expression(
    e: &ExponentialExpression,
    g: &GroupElement,
    bound: u64,
    budget: &OracleBudget,
) -> Result<Option<BTreeMap<String, BigInt>>, HarnessError> {
    e.validate()?;
    let vars = e.variables();
    budget.admit(2 * bound + 1, vars.len())?;
    let b = bound as i64;
    let mut clock = budget.clock();
    let mut point = vec![-b; vars.len()];
    loop {
        clock.tick()?;
        let nu: BTreeMap<String, BigInt> = vars
            .iter()
            .cloned()
            .zip(point.iter().map(|&v| BigInt::from(v)))
            .collect();
        if e.evaluate(&nu)? == *g {
            return Ok(Some(nu));
        }
        let mut i = 0;
        loop {
            if i == point.len() {
                return Ok(None);
            }
            if point[i] < b {
                point[i] += 1;
                break;
            }
            point[i] = -b;
            i += 1;
        }
    }
}

/// Label of an accepting path of the acyclic automaton `a` that evaluates
/// to the same element as `x`, by enumerating all accepting paths.
pub fn brute_force_aratmp(
    a: &Automaton,
    x: &GeneratorWord,
    group: &GroupDescriptor,
) -> Result<Option<GeneratorWord>, HarnessError> {
    a.validate()?;
    let target = group.evaluate_word(x)?;
    for label in a.accepting_labels()? {
        if group.evaluate_word(&label)? == target {
            return Ok(Some(label));
        }
    }
    Ok(None)
}

/// Exact generalized knapsack over the infinite dihedral group.
///
/// A reflection `(s, 1)` has `(s, 1)^n` equal to the identity or to itself
/// depending on the parity of `n`. Fixing the parities, every rotation power
/// `(s, 0)^n` shifts the final result by `+-n s`, the sign given by the
/// reflections to its left, so what remains is one linear equation over `N`.
pub fn dinf_gkp_exact(inst: &GkpInstance) -> Result<Option<Vec<BigInt>>, HarnessError> {
    inst.validate()?;
    if inst.group != GroupDescriptor::Dinf {
        return Err(HarnessError::WrongKind {
            expected: "dinf".into(),
            found: format!("{:?}", inst.group),
        });
    }
    let parts = |g: &GroupElement| match g {
        GroupElement::Dihedral(d) => Ok((d.shift.clone(), d.flip)),
        _ => Err(HarnessError::InvalidInstance("not a dihedral element".into())),
    };
    let reflections: Vec<usize> = (0..inst.k())
        .filter(|&i| matches!(&inst.bases[i], GroupElement::Dihedral(d) if d.flip))
        .collect();
    for mask in 0u64..(1 << reflections.len()) {
        let mut exps = vec![BigInt::zero(); inst.k()];
        for (j, &i) in reflections.iter().enumerate() {
            exps[i] = BigInt::from((mask >> j) & 1);
        }
        // product with every rotation exponent zero, and the signed rotation
        // coefficients
        let mut acc = inst.constants[0].clone();
        let mut coeffs = Vec::new();
        let mut rotations = Vec::new();
        for i in 0..inst.k() {
            let (shift, flip) = parts(&inst.bases[i])?;
            if flip {
                acc = acc.mul(&inst.bases[i].pow(&exps[i])?)?;
            } else {
                let (_, acc_flip) = parts(&acc)?;
                coeffs.push(if acc_flip { -shift } else { shift });
                rotations.push(i);
            }
            acc = acc.mul(&inst.constants[i + 1])?;
        }
        let (shift, flip) = parts(&acc)?;
        if flip {
            continue;
        }
        if let Some(n) = solve_linear_nat(&coeffs, &-shift)? {
            for (&i, v) in rotations.iter().zip(n) {
                exps[i] = v;
            }
            if !inst.is_solution(&exps)? {
                return Err(HarnessError::InvalidInstance("dihedral witness failed re-evaluation".into()));
            }
            return Ok(Some(exps));
        }
    }
    Ok(None)
}

/// Some natural solution of `sum x_i v_i = t`, if any exists, has
/// `|x|_1 < (1 + M)^r`, where `M` is the largest row sum of `|[V | -t]|`
/// and `r` bounds its rank (Pottier's bound for the homogenized system).
pub fn pottier_bound(vectors: &[Vec<i64>], target: &[i64]) -> u64 {
    let n = target.len();
    let m = (0..n)
        .map(|j| vectors.iter().map(|v| v[j].unsigned_abs()).sum::<u64>() + target[j].unsigned_abs())
        .max()
        .unwrap_or(0);
    let r = n.min(vectors.len() + 1) as u32;
    (1 + m).saturating_pow(r)
}

/// Exact knapsack over `Z^n`: searches all `x` with `|x|_1` below
/// [`pottier_bound`], solving for the last coordinate directly.
pub fn zn_knapsack_exact(
    vectors: &[Vec<i64>],
    target: &[i64],
    budget: &OracleBudget,
) -> Result<Option<Vec<u64>>, HarnessError> {
    let n = target.len();
    if vectors.iter().any(|v| v.len() != n) {
        return Err(HarnessError::InvalidInstance("vectors of different dimensions".into()));
    }
    let bound = pottier_bound(vectors, target);
    let k = vectors.len();
    if k == 0 {
        return Ok(target.iter().all(|&t| t == 0).then(Vec::new));
    }
    // number of points with |x|_1 < bound in k - 1 free coordinates
    let points = (0..k as u64 - 1).fold(BigInt::from(1), |acc, i| acc * (bound + i) / (i + 1));
    if points > BigInt::from(budget.cap) {
        return Err(HarnessError::CapExceeded {
            needed: points.to_string(),
            cap: budget.cap,
        });
    }
    let mut clock = budget.clock();
    let mut x = vec![0u64; k];
    let mut rest: Vec<i128> = target.iter().map(|&t| t as i128).collect();
    let found = zn_walk(vectors, 0, bound as i128 - 1, &mut rest, &mut x, &mut clock)?;
    Ok(found.then_some(x))
}

fn zn_walk(
    vectors: &[Vec<i64>],
    i: usize,
    budget_left: i128,
    rest: &mut Vec<i128>,
    x: &mut Vec<u64>,
    clock: &mut Clock,
) -> Result<bool, HarnessError> {
    let v = &vectors[i];
    if i + 1 == vectors.len() {
        clock.tick()?;
        let Some(j) = v.iter().position(|&c| c != 0) else {
            x[i] = 0;
            return Ok(rest.iter().all(|&r| r == 0));
        };
        let c = v[j] as i128;
        if rest[j] % c != 0 {
            return Ok(false);
        }
        let e = rest[j] / c;
        if e < 0 || e > budget_left || rest.iter().zip(v).any(|(&r, &a)| r != e * a as i128) {
            return Ok(false);
        }
        x[i] = e as u64;
        return Ok(true);
    }
    for e in 0..=budget_left {
        x[i] = e as u64;
        if zn_walk(vectors, i + 1, budget_left - e, rest, x, clock)? {
            return Ok(true);
        }
        for (r, &a) in rest.iter_mut().zip(v) {
            *r -= a as i128;
        }
        if v.iter().all(|&a| a == 0) {
            // further multiples change nothing
            for (r, &a) in rest.iter_mut().zip(v) {
                *r += (e + 1) * a as i128;
            }
            return Ok(false);
        }
    }
    for (r, &a) in rest.iter_mut().zip(v) {
        *r += (budget_left + 1) * a as i128;
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupDescriptor;

    fn z_inst(bases: &[i64], target: i64) -> KnapsackInstance {
        KnapsackInstance::new(
            GroupDescriptor::Z { n: 1 },
            bases.iter().map(|&b| GroupElement::vector(&[b])).collect(),
            GroupElement::vector(&[target]),
        )
        .unwrap()
    }

    #[test]
    fn subsetsum_examples() {
        let b = OracleBudget::default();
        assert_eq!(brute_force_subsetsum(&z_inst(&[], 0), &b).unwrap(), Some(vec![]));
        assert_eq!(
            brute_force_subsetsum(&z_inst(&[1, 2, 4], 5), &b).unwrap(),
            Some(vec![true, false, true])
        );
        assert_eq!(brute_force_subsetsum(&z_inst(&[2, 4], 5), &b).unwrap(), None);
    }

    #[test]
    fn knapsack_examples() {
        let b = OracleBudget::default();
        assert_eq!(
            brute_force_knapsack(&z_inst(&[3], 0), &b).unwrap(),
            BoxAnswer::Yes { witness: vec![0] }
        );
        let h = KnapsackInstance::new(
            GroupDescriptor::HeisZe { e: 0 },
            vec![GroupElement::heis(1, 1, 0)],
            GroupElement::heis(2, 2, 1),
        )
        .unwrap();
        assert_eq!(brute_force_knapsack(&h, &b).unwrap(), BoxAnswer::Yes { witness: vec![2] });
        assert_eq!(
            brute_force_knapsack(&z_inst(&[2], 3), &b.with_box(20)).unwrap(),
            BoxAnswer::NoWithinBox { bound: 20 }
        );
    }

    #[test]
    fn caps_are_enforced() {
        let b = OracleBudget::new(6, 100, Duration::from_secs(1)).unwrap();
        let r = brute_force_knapsack(&z_inst(&[1, 1, 1], 2), &b);
        assert!(matches!(r, Err(HarnessError::CapExceeded { .. })));
        assert!(OracleBudget::new(0, 1, Duration::from_secs(1)).is_err());
    }

    #[test]
    fn product_membership_integer_exponents() {
        let g = GroupDescriptor::Z { n: 1 };
        let b = OracleBudget::default();
        let bases = [GroupElement::vector(&[2]), GroupElement::vector(&[3])];
        let r = bounded_product_membership(&g, &bases, &GroupElement::vector(&[-1]), 2, &b).unwrap();
        let e = r.unwrap();
        assert_eq!(2 * e[0] + 3 * e[1], -1);
        let r = bounded_product_membership(&g, &bases[..1], &GroupElement::vector(&[1]), 5, &b).unwrap();
        assert_eq!(r, None);
        let heis = GroupDescriptor::HeisZe { e: 0 };
        let xs = [GroupElement::heis(1, 0, 0), GroupElement::heis(0, 1, 0), GroupElement::heis(-1, 0, 0)];
        let r = bounded_product_membership(&heis, &xs, &GroupElement::heis(0, 1, 1), 2, &b).unwrap();
        assert!(r.is_some());
    }

    #[test]
    fn dihedral_exact() {
        let d = |n: i64, s: bool| GroupElement::dihedral(n, s);
        let inst = GkpInstance::new(
            GroupDescriptor::Dinf,
            vec![d(0, false), d(0, true), d(-5, false)],
            vec![d(2, false), d(1, true)],
        )
        .unwrap();
        let x = dinf_gkp_exact(&inst).unwrap().unwrap();
        assert!(inst.is_solution(&x).unwrap());
        // t^n is a rotation by 3n, never equal to 1
        let inst = GkpInstance::new(
            GroupDescriptor::Dinf,
            vec![d(1, false), d(0, false)],
            vec![d(3, false)],
        )
        .unwrap();
        assert_eq!(dinf_gkp_exact(&inst).unwrap(), None);
    }

    #[test]
    fn zn_exact_matches_small_cases() {
        let b = OracleBudget::default();
        let v = vec![vec![1, -1], vec![-1, 2]];
        let x = zn_knapsack_exact(&v, &[0, 1], &b).unwrap().unwrap();
        assert_eq!((x[0] as i64 - x[1] as i64, -(x[0] as i64) + 2 * x[1] as i64), (0, 1));
        assert_eq!(zn_knapsack_exact(&[vec![2, 0]], &[3, 0], &b).unwrap(), None);
        assert_eq!(zn_knapsack_exact(&[vec![0, 0], vec![1, 1]], &[2, 2], &b).unwrap(), Some(vec![0, 2]));
        assert_eq!(zn_knapsack_exact(&[], &[0, 0], &b).unwrap(), Some(vec![]));
        assert_eq!(pottier_bound(&[vec![1, 0]], &[2, 0]), 16);
        assert_eq!(pottier_bound(&[vec![1]], &[2]), 4);
    }
}
