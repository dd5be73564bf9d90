use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{KnapsackError, KnapsackInstance};
use crate::group::{GroupDescriptor, GroupElement, HeisenbergCoord};
use crate::json::{unwrap_all, wrap_all, JsonInt};

/// `sum coeffs[i] * x_i = constant`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "LinearRepr", from = "LinearRepr")]
pub struct LinearEquation {
    pub coeffs: Vec<BigInt>,
    pub constant: BigInt,
}

#[derive(Serialize, Deserialize)]
struct LinearRepr {
    coeffs: Vec<JsonInt>,
    constant: JsonInt,
}

impl From<LinearEquation> for LinearRepr {
    fn from(e: LinearEquation) -> Self {
        LinearRepr {
            coeffs: wrap_all(&e.coeffs),
            constant: e.constant.into(),
        }
    }
}

impl From<LinearRepr> for LinearEquation {
    fn from(r: LinearRepr) -> Self {
        LinearEquation {
            coeffs: unwrap_all(r.coeffs),
            constant: r.constant.0,
        }
    }
}

/// `sum linear[i] x_i + sum square[i] (x_i - 1) x_i / 2
///  + sum_{(i, j, c) in cross} c x_i x_j = constant`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "QuadraticRepr", from = "QuadraticRepr")]
pub struct QuadraticEquation {
    pub linear: Vec<BigInt>,
    pub square: Vec<BigInt>,
    pub cross: Vec<(usize, usize, BigInt)>,
    pub constant: BigInt,
}

#[derive(Serialize, Deserialize)]
struct QuadraticRepr {
    linear: Vec<JsonInt>,
    square: Vec<JsonInt>,
    cross: Vec<(usize, usize, JsonInt)>,
    constant: JsonInt,
}

impl From<QuadraticEquation> for QuadraticRepr {
    fn from(e: QuadraticEquation) -> Self {
        QuadraticRepr {
            linear: wrap_all(&e.linear),
            square: wrap_all(&e.square),
            cross: e.cross.into_iter().map(|(i, j, c)| (i, j, c.into())).collect(),
            constant: e.constant.into(),
        }
    }
}

impl From<QuadraticRepr> for QuadraticEquation {
    fn from(r: QuadraticRepr) -> Self {
        QuadraticEquation {
            linear: unwrap_all(r.linear),
            square: unwrap_all(r.square),
            cross: r.cross.into_iter().map(|(i, j, c)| (i, j, c.0)).collect(),
            constant: r.constant.0,
        }
    }
}

/// Linear equations for the `a`, `b` and `Z^e` coordinates and one quadratic
/// equation for the central coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiophantineSystem {
    pub k: usize,
    pub linear: Vec<LinearEquation>,
    pub quadratic: QuadraticEquation,
}

fn tri(x: &BigInt) -> BigInt {
    (x - BigInt::one()) * x / 2
}

impl LinearEquation {
    pub fn lhs(&self, x: &[BigInt]) -> BigInt {
        self.coeffs.iter().zip(x).map(|(c, v)| c * v).sum()
    }
}

impl QuadraticEquation {
    pub fn lhs(&self, x: &[BigInt]) -> BigInt {
        let mut s: BigInt = self.linear.iter().zip(x).map(|(c, v)| c * v).sum();
        s += self.square.iter().zip(x).map(|(c, v)| c * tri(v)).sum::<BigInt>();
        for (i, j, c) in &self.cross {
            s += c * &x[*i] * &x[*j];
        }
        s
    }

    /// Left side modulo `p`, with each `x_i` given modulo `2p`.
    pub fn lhs_mod(&self, r: &[i64], p: i64) -> i64 {
        let m = |v: &BigInt| -> i64 {
            let t: BigInt = v % p;
            i64::try_from(t).unwrap_or(0)
        };
        let mut s: i64 = 0;
        for (i, &ri) in r.iter().enumerate() {
            s += m(&self.linear[i]) * (ri % p);
            s += m(&self.square[i]) * (((ri - 1) * ri / 2) % p);
            s %= p;
        }
        for (i, j, c) in &self.cross {
            s = (s + m(c) * ((r[*i] * r[*j]) % p)) % p;
        }
        s.rem_euclid(p)
    }
}

impl DiophantineSystem {
    pub fn is_solution(&self, x: &[BigInt]) -> bool {
        x.len() == self.k
            && self.linear.iter().all(|e| e.lhs(x) == e.constant)
            && self.quadratic.lhs(x) == self.quadratic.constant
    }
}

/// Heisenberg coordinates and central part of an element of `H3(Z) x Z^e`
/// (or `UT_3(Z)`).
pub(crate) fn heis_parts(x: &GroupElement) -> Result<(HeisenbergCoord, Vec<BigInt>), KnapsackError> {
    match x {
        GroupElement::Heis { coord, z } => Ok((coord.clone(), z.clone())),
        GroupElement::Matrix(m) => HeisenbergCoord::from_matrix(m)
            .map(|c| (c, Vec::new()))
            .ok_or(KnapsackError::WrongGroup),
        _ => Err(KnapsackError::WrongGroup),
    }
}

pub(crate) fn check_heisenberg(group: &GroupDescriptor) -> Result<usize, KnapsackError> {
    match group {
        GroupDescriptor::HeisZe { e } => Ok(*e),
        GroupDescriptor::Ut { d: 3 } => Ok(0),
        _ => Err(KnapsackError::WrongGroup),
    }
}

/// Reads the knapsack equation over `H3(Z) x Z^e` off the closed-form power
/// `(a,b,c)^n = (an, bn, cn + ab(n-1)n/2)` and the product law.
pub fn knapsack_to_diophantine(inst: &KnapsackInstance) -> Result<DiophantineSystem, KnapsackError> {
    let e = check_heisenberg(&inst.group)?;
    inst.validate()?;
    let parts: Vec<(HeisenbergCoord, Vec<BigInt>)> =
        inst.bases.iter().map(heis_parts).collect::<Result<_, _>>()?;
    let (t, tz) = heis_parts(&inst.target)?;
    let k = parts.len();
    let mut linear = vec![
        LinearEquation {
            coeffs: parts.iter().map(|(c, _)| c.a.clone()).collect(),
            constant: t.a.clone(),
        },
        LinearEquation {
            coeffs: parts.iter().map(|(c, _)| c.b.clone()).collect(),
            constant: t.b.clone(),
        },
    ];
    for i in 0..e {
        linear.push(LinearEquation {
            coeffs: parts.iter().map(|(_, z)| z[i].clone()).collect(),
            constant: tz[i].clone(),
        });
    }
    let mut cross = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let c = &parts[i].0.a * &parts[j].0.b;
            if !c.is_zero() {
                cross.push((i, j, c));
            }
        }
    }
    let quadratic = QuadraticEquation {
        linear: parts.iter().map(|(c, _)| c.c.clone()).collect(),
        square: parts.iter().map(|(c, _)| &c.a * &c.b).collect(),
        cross,
        constant: t.c,
    };
    Ok(DiophantineSystem { k, linear, quadratic })
}
