use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{DihedralElement, GroupError, HeisenbergCoord, IntMatrix, QuadInt, QuadMatrix};
use crate::json::{unwrap_all, wrap_all, JsonInt};

/// A value in one of the concrete groups. Products are flat tuples.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "ElementRepr", try_from = "ElementRepr")]
pub enum GroupElement {
    /// Element of `UT_d(Z)`.
    Matrix(IntMatrix),
    /// Element of `H3(Z) x Z^e`.
    Heis { coord: HeisenbergCoord, z: Vec<BigInt> },
    /// Element of `G_alpha`.
    Quad(QuadMatrix),
    Dihedral(DihedralElement),
    /// Element of `Z^n`, written additively.
    Vector(Vec<BigInt>),
    Product(Vec<GroupElement>),
}

impl GroupElement {
    pub fn heis(a: i64, b: i64, c: i64) -> Self {
        GroupElement::Heis {
            coord: HeisenbergCoord::new(a, b, c),
            z: Vec::new(),
        }
    }

    pub fn vector(v: &[i64]) -> Self {
        GroupElement::Vector(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn dihedral(shift: i64, flip: bool) -> Self {
        GroupElement::Dihedral(DihedralElement::new(shift, flip))
    }

    pub fn mul(&self, other: &GroupElement) -> Result<GroupElement, GroupError> {
        use GroupElement::*;
        Ok(match (self, other) {
            (Matrix(x), Matrix(y)) => Matrix(x.mul(y)?),
            (Heis { coord: c1, z: z1 }, Heis { coord: c2, z: z2 }) => {
                if z1.len() != z2.len() {
                    return Err(mismatch(self, other));
                }
                Heis {
                    coord: c1.mul(c2),
                    z: z1.iter().zip(z2).map(|(a, b)| a + b).collect(),
                }
            }
            (Quad(x), Quad(y)) => Quad(x.mul(y)),
            (Dihedral(x), Dihedral(y)) => Dihedral(x.mul(y)),
            (Vector(x), Vector(y)) => {
                if x.len() != y.len() {
                    return Err(mismatch(self, other));
                }
                Vector(x.iter().zip(y).map(|(a, b)| a + b).collect())
            }
            (Product(xs), Product(ys)) => {
                if xs.len() != ys.len() {
                    return Err(mismatch(self, other));
                }
                Product(
                    xs.iter()
                        .zip(ys)
                        .map(|(a, b)| a.mul(b))
                        .collect::<Result<_, _>>()?,
                )
            }
            _ => return Err(mismatch(self, other)),
        })
    }

    pub fn inv(&self) -> Result<GroupElement, GroupError> {
        use GroupElement::*;
        Ok(match self {
            Matrix(m) => Matrix(m.inv()?),
            Heis { coord, z } => Heis {
                coord: coord.inv(),
                z: z.iter().map(|x| -x).collect(),
            },
            Quad(m) => Quad(m.inv()?),
            Dihedral(d) => Dihedral(d.inv()),
            Vector(v) => Vector(v.iter().map(|x| -x).collect()),
            Product(xs) => Product(xs.iter().map(|x| x.inv()).collect::<Result<_, _>>()?),
        })
    }

    /// Integer power, negative exponents allowed.
    pub fn pow(&self, n: &BigInt) -> Result<GroupElement, GroupError> {
        use GroupElement::*;
        Ok(match self {
            Heis { coord, z } => Heis {
                coord: coord.pow(n),
                z: z.iter().map(|x| x * n).collect(),
            },
            Vector(v) => Vector(v.iter().map(|x| x * n).collect()),
            Dihedral(d) => {
                if d.flip {
                    if n.is_even() {
                        Dihedral(DihedralElement::identity())
                    } else {
                        self.clone()
                    }
                } else {
                    Dihedral(DihedralElement::new(&d.shift * n, false))
                }
            }
            Product(xs) => Product(xs.iter().map(|x| x.pow(n)).collect::<Result<_, _>>()?),
            Matrix(_) | Quad(_) => {
                let (mut base, mut e) = if n.is_negative() {
                    (self.inv()?, -n)
                } else {
                    (self.clone(), n.clone())
                };
                let mut acc = self.identity_like();
                while !e.is_zero() {
                    if e.is_odd() {
                        acc = acc.mul(&base)?;
                    }
                    e >>= 1u32;
                    if !e.is_zero() {
                        base = base.mul(&base)?;
                    }
                }
                acc
            }
        })
    }

    pub fn pow_i64(&self, n: i64) -> Result<GroupElement, GroupError> {
        self.pow(&BigInt::from(n))
    }

    /// Identity of the group this element lives in, read off its shape.
    pub fn identity_like(&self) -> GroupElement {
        use GroupElement::*;
        match self {
            Matrix(m) => Matrix(IntMatrix::identity(m.dim())),
            Heis { z, .. } => Heis {
                coord: HeisenbergCoord::identity(),
                z: vec![BigInt::zero(); z.len()],
            },
            Quad(_) => Quad(QuadMatrix::identity()),
            Dihedral(_) => Dihedral(DihedralElement::identity()),
            Vector(v) => Vector(vec![BigInt::zero(); v.len()]),
            Product(xs) => Product(xs.iter().map(|x| x.identity_like()).collect()),
        }
    }

    pub fn is_identity(&self) -> bool {
        use GroupElement::*;
        match self {
            Matrix(m) => *m == IntMatrix::identity(m.dim()),
            Heis { coord, z } => coord.is_identity() && z.iter().all(|x| x.is_zero()),
            Quad(m) => m.is_identity(),
            Dihedral(d) => d.is_identity(),
            Vector(v) => v.iter().all(|x| x.is_zero()),
            Product(xs) => xs.iter().all(|x| x.is_identity()),
        }
    }

    /// `x y = y x`.
    pub fn commutes_with(&self, other: &GroupElement) -> Result<bool, GroupError> {
        Ok(self.mul(other)? == other.mul(self)?)
    }
}

fn mismatch(x: &GroupElement, y: &GroupElement) -> GroupError {
    GroupError::Mismatch(format!("{} vs {}", shape_name(x), shape_name(y)))
}

fn shape_name(x: &GroupElement) -> String {
    match x {
        GroupElement::Matrix(m) => format!("{0}x{0} matrix", m.dim()),
        GroupElement::Heis { z, .. } => format!("heis x Z^{}", z.len()),
        GroupElement::Quad(_) => "G_alpha".into(),
        GroupElement::Dihedral(_) => "D_inf".into(),
        GroupElement::Vector(v) => format!("Z^{}", v.len()),
        GroupElement::Product(xs) => format!("product of {}", xs.len()),
    }
}

/// JSON wire form of [`GroupElement`].
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ElementRepr {
    Matrix(Vec<Vec<JsonInt>>),
    Heis {
        a: JsonInt,
        b: JsonInt,
        c: JsonInt,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        z: Vec<JsonInt>,
    },
    /// Row-major `[[p, q]; 4]`.
    Quad(Vec<(JsonInt, JsonInt)>),
    /// `[shift, flip]` with flip 0 or 1.
    Dihedral(JsonInt, u8),
    Vector(Vec<JsonInt>),
    Product(Vec<ElementRepr>),
}

impl From<GroupElement> for ElementRepr {
    fn from(x: GroupElement) -> Self {
        match x {
            GroupElement::Matrix(m) => {
                ElementRepr::Matrix(m.rows().iter().map(|r| wrap_all(r)).collect())
            }
            GroupElement::Heis { coord, z } => ElementRepr::Heis {
                a: coord.a.into(),
                b: coord.b.into(),
                c: coord.c.into(),
                z: wrap_all(&z),
            },
            GroupElement::Quad(m) => ElementRepr::Quad(
                m.entries
                    .into_iter()
                    .map(|e| (JsonInt(e.p), JsonInt(e.q)))
                    .collect(),
            ),
            GroupElement::Dihedral(d) => ElementRepr::Dihedral(d.shift.into(), d.flip as u8),
            GroupElement::Vector(v) => ElementRepr::Vector(wrap_all(&v)),
            GroupElement::Product(xs) => ElementRepr::Product(xs.into_iter().map(Into::into).collect()),
        }
    }
}

impl TryFrom<ElementRepr> for GroupElement {
    type Error = GroupError;

    fn try_from(r: ElementRepr) -> Result<Self, GroupError> {
        Ok(match r {
            ElementRepr::Matrix(rows) => {
                GroupElement::Matrix(IntMatrix::from_rows(rows.into_iter().map(unwrap_all).collect())?)
            }
            ElementRepr::Heis { a, b, c, z } => GroupElement::Heis {
                coord: HeisenbergCoord::new(a.0, b.0, c.0),
                z: unwrap_all(z),
            },
            ElementRepr::Quad(es) => {
                if es.len() != 4 {
                    return Err(GroupError::InvalidElement("quad matrix needs 4 entries".into()));
                }
                let mut it = es.into_iter().map(|(p, q)| QuadInt::new(p.0, q.0));
                let mut next = || it.next().unwrap();
                GroupElement::Quad(QuadMatrix::new(next(), next(), next(), next()))
            }
            ElementRepr::Dihedral(shift, flip) => {
                if flip > 1 {
                    return Err(GroupError::InvalidElement("dihedral flip must be 0 or 1".into()));
                }
                GroupElement::Dihedral(DihedralElement::new(shift.0, flip == 1))
            }
            ElementRepr::Vector(v) => GroupElement::Vector(unwrap_all(v)),
            ElementRepr::Product(xs) => GroupElement::Product(
                xs.into_iter().map(GroupElement::try_from).collect::<Result<_, _>>()?,
            ),
        })
    }
}
