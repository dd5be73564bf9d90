use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::HardnessError;
use crate::json::JsonInt;

/// Integer polynomial as a list of `(coefficient, monomial)` pairs; a
/// monomial lists 1-based variable indices with multiplicity, so
/// `[3, [1, 1, 2]]` is `3 x1^2 x2`. JSON: `[[3, [1, 1, 2]], [-1, []]]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polynomial(pub Vec<(JsonInt, Vec<usize>)>);

impl Polynomial {
    pub fn new(terms: Vec<(i64, Vec<usize>)>) -> Self {
        Polynomial(terms.into_iter().map(|(c, m)| (JsonInt(c.into()), m)).collect())
    }

    /// Highest variable index used.
    pub fn vars(&self) -> usize {
        self.0.iter().flat_map(|(_, m)| m.iter().copied()).max().unwrap_or(0)
    }

    /// `values[i]` is the value of `x_{i+1}`.
    pub fn eval(&self, values: &[BigInt]) -> BigInt {
        self.0
            .iter()
            .map(|(c, m)| m.iter().fold(c.0.clone(), |acc, &v| acc * &values[v - 1]))
            .sum()
    }
}

/// One equation of a system: `x * y = z`, `x + y = z` or `x = c`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum PolyEquation {
    Product { x: String, y: String, z: String },
    Sum { x: String, y: String, z: String },
    Const { x: String, c: JsonInt },
}

impl PolyEquation {
    pub fn holds(&self, nu: &BTreeMap<String, BigInt>) -> bool {
        let v = |name: &String| nu.get(name).cloned().unwrap_or_default();
        match self {
            PolyEquation::Product { x, y, z } => v(x) * v(y) == v(z),
            PolyEquation::Sum { x, y, z } => v(x) + v(y) == v(z),
            PolyEquation::Const { x, c } => v(x) == c.0,
        }
    }

    pub fn variables(&self) -> Vec<&String> {
        match self {
            PolyEquation::Product { x, y, z } | PolyEquation::Sum { x, y, z } => vec![x, y, z],
            PolyEquation::Const { x, .. } => vec![x],
        }
    }

    pub fn is_product(&self) -> bool {
        matches!(self, PolyEquation::Product { .. })
    }
}

/// System of product, sum and constant equations containing `x0 = a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyEquationSystem {
    pub variables: Vec<String>,
    pub equations: Vec<PolyEquation>,
    pub x0: String,
    pub a: JsonInt,
}

impl PolyEquationSystem {
    pub fn validate(&self) -> Result<(), HardnessError> {
        let declared: BTreeSet<&String> = self.variables.iter().collect();
        for e in &self.equations {
            for v in e.variables() {
                if !declared.contains(v) {
                    return Err(HardnessError::UndeclaredVariable(v.clone()));
                }
            }
        }
        let anchors = self
            .equations
            .iter()
            .filter(|e| matches!(e, PolyEquation::Const { x, c } if *x == self.x0 && c.0 == self.a.0))
            .count();
        if anchors != 1 {
            return Err(HardnessError::MissingAnchor);
        }
        Ok(())
    }

    pub fn is_solution(&self, nu: &BTreeMap<String, BigInt>) -> bool {
        self.equations.iter().all(|e| e.holds(nu))
    }

    pub fn product_count(&self) -> usize {
        self.equations.iter().filter(|e| e.is_product()).count()
    }
}

/// Coefficients up to this magnitude are expanded into repeated sums; larger
/// ones are multiplied in through a constant variable.
pub const COEFF_SUM_GUARD: u64 = 16;

struct Builder {
    variables: Vec<String>,
    equations: Vec<PolyEquation>,
    fresh: usize,
}

impl Builder {
    fn fresh(&mut self) -> String {
        self.fresh += 1;
        let name = format!("t{}", self.fresh);
        self.variables.push(name.clone());
        name
    }

    fn product(&mut self, x: &str, y: &str) -> String {
        let z = self.fresh();
        self.equations.push(PolyEquation::Product {
            x: x.into(),
            y: y.into(),
            z: z.clone(),
        });
        z
    }

    fn sum(&mut self, x: &str, y: &str) -> String {
        let z = self.fresh();
        self.equations.push(PolyEquation::Sum {
            x: x.into(),
            y: y.into(),
            z: z.clone(),
        });
        z
    }

    fn constant(&mut self, c: BigInt) -> String {
        let z = self.fresh();
        self.equations.push(PolyEquation::Const {
            x: z.clone(),
            c: JsonInt(c),
        });
        z
    }

    fn negate(&mut self, x: &str) -> String {
        // n + x = zero
        let n = self.fresh();
        self.equations.push(PolyEquation::Sum {
            x: n.clone(),
            y: x.into(),
            z: "zero".into(),
        });
        n
    }

    fn term(&mut self, c: &BigInt, mono: &[usize]) -> String {
        if mono.is_empty() {
            return self.constant(c.clone());
        }
        let mut v = format!("x{}", mono[0]);
        for &i in &mono[1..] {
            v = self.product(&v, &format!("x{i}"));
        }
        let mag = c.abs();
        if mag > BigInt::from(COEFF_SUM_GUARD) {
            let k = self.constant(c.clone());
            return self.product(&k, &v);
        }
        let mag = mag.to_u64().expect("guarded");
        let mut s = v.clone();
        for _ in 1..mag {
            s = self.sum(&s, &v);
        }
        if c.is_negative() {
            s = self.negate(&s);
        }
        s
    }
}

/// Flattens `P(x_1..x_n) = a` into product, sum and constant equations over
/// fresh variables `t1, t2, ..`, plus `zero = 0` and `x0 = a`. Solutions over
/// the integers correspond, restricted to `x1..xn`.
pub fn polynomial_to_system(p: &Polynomial, a: &BigInt) -> PolyEquationSystem {
    let n = p.vars();
    let mut variables: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    variables.push("x0".into());
    variables.push("zero".into());
    let mut b = Builder {
        variables,
        equations: vec![
            PolyEquation::Const {
                x: "zero".into(),
                c: JsonInt(BigInt::zero()),
            },
            PolyEquation::Const {
                x: "x0".into(),
                c: JsonInt(a.clone()),
            },
        ],
        fresh: 0,
    };
    let terms: Vec<String> = p
        .0
        .iter()
        .filter(|(c, _)| !c.0.is_zero())
        .map(|(c, m)| b.term(&c.0, m))
        .collect();
    let push_sum = |b: &mut Builder, x: &str, y: &str, z: &str| {
        b.equations.push(PolyEquation::Sum {
            x: x.into(),
            y: y.into(),
            z: z.into(),
        })
    };
    match terms.len() {
        0 => push_sum(&mut b, "zero", "zero", "x0"),
        1 => push_sum(&mut b, &terms[0], "zero", "x0"),
        len => {
            let mut acc = terms[0].clone();
            for (i, t) in terms.iter().enumerate().skip(1) {
                if i + 1 == len {
                    push_sum(&mut b, &acc, t, "x0");
                } else {
                    acc = b.sum(&acc, t);
                }
            }
        }
    }
    PolyEquationSystem {
        variables: b.variables,
        equations: b.equations,
        x0: "x0".into(),
        a: JsonInt(a.clone()),
    }
}

/// Extends an assignment of `x1..xn` to every variable of a system produced
/// by [`polynomial_to_system`], by evaluating the equations in order.
pub fn complete_assignment(
    sys: &PolyEquationSystem,
    xs: &[BigInt],
) -> BTreeMap<String, BigInt> {
    let mut nu: BTreeMap<String, BigInt> = xs
        .iter()
        .enumerate()
        .map(|(i, v)| (format!("x{}", i + 1), v.clone()))
        .collect();
    for e in &sys.equations {
        match e {
            PolyEquation::Const { x, c } => {
                nu.insert(x.clone(), c.0.clone());
            }
            PolyEquation::Product { x, y, z } => {
                let v = &nu[x] * &nu[y];
                nu.entry(z.clone()).or_insert(v);
            }
            PolyEquation::Sum { x, y, z } if z == "zero" => {
                // negation n + y = zero
                let v = -nu[y].clone();
                nu.entry(x.clone()).or_insert(v);
            }
            PolyEquation::Sum { x, y, z } => {
                let v = &nu[x] + &nu[y];
                nu.entry(z.clone()).or_insert(v);
            }
        }
    }
    nu.entry("zero".into()).or_insert_with(BigInt::zero);
    nu
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solvable_in_box(p: &Polynomial, a: i64, bound: i64) -> bool {
        let sys = polynomial_to_system(p, &BigInt::from(a));
        sys.validate().unwrap();
        let n = p.vars();
        let mut x = vec![-bound; n];
        loop {
            let xs: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
            let nu = complete_assignment(&sys, &xs);
            let direct = p.eval(&xs) == BigInt::from(a);
            assert_eq!(sys.is_solution(&nu), direct, "{x:?}");
            if direct {
                return true;
            }
            let mut i = 0;
            loop {
                if i == n {
                    return false;
                }
                x[i] += 1;
                if x[i] <= bound {
                    break;
                }
                x[i] = -bound;
                i += 1;
            }
        }
    }

    #[test]
    fn linear_polynomial() {
        let p = Polynomial::new(vec![(1, vec![1])]);
        let sys = polynomial_to_system(&p, &BigInt::from(7));
        assert_eq!(sys.equations.len(), 3);
        assert_eq!(
            sys.equations[2],
            PolyEquation::Sum { x: "x1".into(), y: "zero".into(), z: "x0".into() }
        );
        assert!(solvable_in_box(&p, 7, 8));
    }

    #[test]
    fn square_polynomial() {
        let p = Polynomial::new(vec![(1, vec![1, 1])]);
        let sys = polynomial_to_system(&p, &BigInt::from(4));
        assert_eq!(sys.product_count(), 1);
        assert_eq!(sys.equations.len(), 4);
        assert!(solvable_in_box(&p, 4, 3));
        assert!(!solvable_in_box(&p, 3, 3));
    }

    #[test]
    fn mixed_terms() {
        // 3 x1 x2 - 2 x2 + 40 x1 - 5
        let p = Polynomial::new(vec![(3, vec![1, 2]), (-2, vec![2]), (40, vec![1]), (-5, vec![])]);
        for a in [-5, 0, 33, 36, 200] {
            solvable_in_box(&p, a, 3);
        }
    }

    #[test]
    fn undeclared_variable() {
        let mut sys = polynomial_to_system(&Polynomial::new(vec![(1, vec![1])]), &BigInt::from(1));
        sys.variables.retain(|v| v != "x1");
        assert!(sys.validate().is_err());
    }
}
