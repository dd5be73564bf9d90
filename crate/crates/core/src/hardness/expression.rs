use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{HardnessError, PolyEquation, PolyEquationSystem};
use crate::group::{GroupDescriptor, GroupElement};
use crate::knapsack::KnapsackInstance;

/// Formal product `g_1^{x_1} ... g_l^{x_l}` with variables as exponents.
/// `blocks`, when present, lists the lengths of consecutive blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentialExpression {
    pub group: GroupDescriptor,
    pub factors: Vec<(GroupElement, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<usize>>,
}

impl ExponentialExpression {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Variables in order of first appearance.
    pub fn variables(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for (_, x) in &self.factors {
            if !out.contains(x) {
                out.push(x.clone());
            }
        }
        out
    }

    pub fn bases(&self) -> Vec<GroupElement> {
        self.factors.iter().map(|(g, _)| g.clone()).collect()
    }

    /// Value under `nu`; missing variables count as 0.
    pub fn evaluate(&self, nu: &BTreeMap<String, BigInt>) -> Result<GroupElement, HardnessError> {
        let mut acc = self.group.identity();
        for (g, x) in &self.factors {
            let e = nu.get(x).cloned().unwrap_or_else(BigInt::zero);
            acc = acc.mul(&g.pow(&e)?)?;
        }
        Ok(acc)
    }

    pub fn validate(&self) -> Result<(), HardnessError> {
        for (g, _) in &self.factors {
            self.group.check(g)?;
        }
        if let Some(blocks) = &self.blocks {
            check_blocks(&self.bases(), blocks)?;
        }
        Ok(())
    }
}

/// Blocks have length at most 4, cover the sequence, and elements of
/// different blocks commute.
pub fn check_blocks(seq: &[GroupElement], blocks: &[usize]) -> Result<(), HardnessError> {
    if blocks.iter().sum::<usize>() != seq.len() {
        return Err(HardnessError::BlockInvariant("block lengths do not cover the sequence".into()));
    }
    if blocks.iter().any(|&b| b == 0 || b > 4) {
        return Err(HardnessError::BlockInvariant("blocks must have length 1 to 4".into()));
    }
    let mut owner = Vec::with_capacity(seq.len());
    for (i, &b) in blocks.iter().enumerate() {
        owner.extend(std::iter::repeat_n(i, b));
    }
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if owner[i] != owner[j] && !seq[i].commutes_with(&seq[j])? {
                return Err(HardnessError::BlockInvariant(format!(
                    "elements {} and {} lie in different blocks but do not commute",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(())
}

/// The element of a flat product that is `g` in factor `i` and trivial
/// elsewhere.
fn inject(factors: &[GroupDescriptor], i: usize, g: GroupElement) -> GroupElement {
    GroupElement::Product(
        factors
            .iter()
            .enumerate()
            .map(|(j, f)| if i == j { g.clone() } else { f.identity() })
            .collect(),
    )
}

/// Components of `x` along the factors of `group`.
fn components(group: &GroupDescriptor, x: &GroupElement) -> Vec<GroupElement> {
    match (group, x) {
        (GroupDescriptor::Product { .. }, GroupElement::Product(xs)) => xs.clone(),
        _ => vec![x.clone()],
    }
}

/// One exponential expression per equation over `H3(Z)^d x Z^e`, with the
/// `d` product equations first. The product equation `x y = z` becomes
/// `(0,1,0)^x (1,0,0)^y (0,-1,0)^x (-1,0,0)^y (0,0,1)^z = 1`, a sum
/// `x + y = z` becomes `a^x a^y a^-z = 0`, and `x = c` becomes `a^x = c`.
/// Blocks: `[4, 1]` per product equation (the last base is central), `[3]`
/// per sum and `[1]` per constant.
pub fn system_to_expression(
    sys: &PolyEquationSystem,
) -> Result<(ExponentialExpression, GroupElement), HardnessError> {
    sys.validate()?;
    let products: Vec<&PolyEquation> = sys.equations.iter().filter(|e| e.is_product()).collect();
    let others: Vec<&PolyEquation> = sys.equations.iter().filter(|e| !e.is_product()).collect();
    let mut factors: Vec<GroupDescriptor> = Vec::new();
    factors.extend(std::iter::repeat_n(GroupDescriptor::HeisZe { e: 0 }, products.len()));
    factors.extend(std::iter::repeat_n(GroupDescriptor::Z { n: 1 }, others.len()));
    let group = GroupDescriptor::product(factors.clone());
    let mut terms = Vec::new();
    let mut blocks = Vec::new();
    let mut target = Vec::new();
    for (i, eq) in products.iter().chain(others.iter()).enumerate() {
        let put = |g: GroupElement| inject(&factors, i, g);
        match eq {
            PolyEquation::Product { x, y, z } => {
                terms.push((put(GroupElement::heis(0, 1, 0)), x.clone()));
                terms.push((put(GroupElement::heis(1, 0, 0)), y.clone()));
                terms.push((put(GroupElement::heis(0, -1, 0)), x.clone()));
                terms.push((put(GroupElement::heis(-1, 0, 0)), y.clone()));
                terms.push((put(GroupElement::heis(0, 0, 1)), z.clone()));
                blocks.extend([4, 1]);
                target.push(GroupElement::heis(0, 0, 0));
            }
            PolyEquation::Sum { x, y, z } => {
                terms.push((put(GroupElement::vector(&[1])), x.clone()));
                terms.push((put(GroupElement::vector(&[1])), y.clone()));
                terms.push((put(GroupElement::vector(&[-1])), z.clone()));
                blocks.push(3);
                target.push(GroupElement::vector(&[0]));
            }
            PolyEquation::Const { x, c } => {
                terms.push((put(GroupElement::vector(&[1])), x.clone()));
                blocks.push(1);
                target.push(GroupElement::Vector(vec![c.0.clone()]));
            }
        }
    }
    let expr = ExponentialExpression {
        group,
        factors: terms,
        blocks: Some(blocks),
    };
    Ok((expr, GroupElement::Product(target)))
}

/// Knapsack instance (integer exponents) over `G x Z^l` built from `E = g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpressionKnapsack {
    pub instance: KnapsackInstance,
    /// Variable attached to each of the first bases `h_x`.
    pub variables: Vec<String>,
    /// Block lengths of the base sequence: one block per `h_x`, then the
    /// blocks of `E` (or singletons if `E` has none).
    pub blocks: Vec<usize>,
}

/// `h_x = (1, e_x)` for each variable, then `h_i = (g_i, -e_i)` per
/// position; `E = g` is solvable iff `(g, 0)` lies in
/// `prod <h_x> prod <h_i>`.
pub fn expression_to_knapsack(
    e: &ExponentialExpression,
    g: &GroupElement,
) -> Result<ExpressionKnapsack, HardnessError> {
    e.validate()?;
    e.group.check(g)?;
    let l = e.len();
    let mut factors = e.group.factors();
    factors.push(GroupDescriptor::Z { n: l });
    let group = GroupDescriptor::product(factors);
    let g_id = components(&e.group, &e.group.identity());
    let unit = |coeffs: Vec<i64>| GroupElement::vector(&coeffs);
    let vars = e.variables();
    let mut bases = Vec::with_capacity(vars.len() + l);
    for x in &vars {
        let ex: Vec<i64> = e.factors.iter().map(|(_, y)| i64::from(y == x)).collect();
        let mut parts = g_id.clone();
        parts.push(unit(ex));
        bases.push(GroupElement::Product(parts));
    }
    for (i, (gi, _)) in e.factors.iter().enumerate() {
        let mut parts = components(&e.group, gi);
        let mut ei = vec![0i64; l];
        ei[i] = -1;
        parts.push(unit(ei));
        bases.push(GroupElement::Product(parts));
    }
    let mut tparts = components(&e.group, g);
    tparts.push(unit(vec![0; l]));
    let mut blocks = vec![1; vars.len()];
    match &e.blocks {
        Some(b) => blocks.extend(b),
        None => blocks.extend(std::iter::repeat_n(1, l)),
    }
    Ok(ExpressionKnapsack {
        instance: KnapsackInstance::new(group, bases, GroupElement::Product(tparts))?,
        variables: vars,
        blocks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hardness::{polynomial_to_system, Polynomial};

    fn nu(pairs: &[(&str, i64)]) -> BTreeMap<String, BigInt> {
        pairs.iter().map(|(k, v)| (k.to_string(), BigInt::from(*v))).collect()
    }

    fn single_product() -> PolyEquationSystem {
        PolyEquationSystem {
            variables: vec!["x".into(), "y".into(), "z".into(), "x0".into()],
            equations: vec![
                PolyEquation::Product { x: "x".into(), y: "y".into(), z: "z".into() },
                PolyEquation::Const { x: "x0".into(), c: crate::json::JsonInt(BigInt::zero()) },
            ],
            x0: "x0".into(),
            a: crate::json::JsonInt(BigInt::zero()),
        }
    }

    #[test]
    fn case_one() {
        let (e, g) = system_to_expression(&single_product()).unwrap();
        assert_eq!(e.blocks, Some(vec![4, 1, 1]));
        let good = nu(&[("x", 2), ("y", 3), ("z", 6), ("x0", 0)]);
        assert_eq!(e.evaluate(&good).unwrap(), g);
        let bad = nu(&[("x", 1), ("y", 1), ("z", 0), ("x0", 0)]);
        let v = e.evaluate(&bad).unwrap();
        assert_eq!(components(&e.group, &v)[0], GroupElement::heis(0, 0, -1));
    }

    #[test]
    fn case_three() {
        let sys = polynomial_to_system(&Polynomial::new(vec![(1, vec![1])]), &BigInt::from(5));
        let (e, g) = system_to_expression(&sys).unwrap();
        let full = nu(&[("x1", 5), ("x0", 5), ("zero", 0)]);
        assert_eq!(e.evaluate(&full).unwrap(), g);
        let off = nu(&[("x1", 4), ("x0", 5), ("zero", 0)]);
        assert_ne!(e.evaluate(&off).unwrap(), g);
    }

    #[test]
    fn knapsack_encoding_over_z() {
        let z = GroupDescriptor::Z { n: 1 };
        let a = GroupElement::vector(&[1]);
        let e = ExponentialExpression {
            group: z.clone(),
            factors: vec![(a.clone(), "x".into()), (a.clone(), "x".into())],
            blocks: None,
        };
        let k = expression_to_knapsack(&e, &GroupElement::vector(&[2])).unwrap();
        assert_eq!(k.instance.bases.len(), 3);
        assert_eq!(
            k.instance.bases[0],
            GroupElement::Product(vec![GroupElement::vector(&[0]), GroupElement::vector(&[1, 1])])
        );
        let one = BigInt::from(1);
        assert!(k.instance.is_solution(&[one.clone(), one.clone(), one]).unwrap());

        let e = ExponentialExpression { group: z.clone(), factors: vec![(a.clone(), "x".into())], blocks: None };
        let k = expression_to_knapsack(&e, &GroupElement::vector(&[3])).unwrap();
        let three = BigInt::from(3);
        assert!(k.instance.is_solution(&[three.clone(), three]).unwrap());

        let e = ExponentialExpression { group: z, factors: vec![], blocks: None };
        let k = expression_to_knapsack(&e, &GroupElement::vector(&[0])).unwrap();
        assert!(k.instance.is_solution(&[]).unwrap());
    }

    #[test]
    fn blocks_checked() {
        let h = GroupDescriptor::HeisZe { e: 0 };
        let e = ExponentialExpression {
            group: h,
            factors: vec![(GroupElement::heis(1, 0, 0), "x".into()), (GroupElement::heis(0, 1, 0), "y".into())],
            blocks: Some(vec![1, 1]),
        };
        assert!(matches!(e.validate(), Err(HardnessError::BlockInvariant(_))));
    }
}
