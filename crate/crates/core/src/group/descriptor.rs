use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{
    DihedralElement, GeneratorWord, GroupElement, GroupError, HeisenbergCoord, IntMatrix,
    QuadMatrix,
};

/// Which concrete group a value lives in.
///
/// Generating sets:
/// * `ut`: the elementary matrices `Id + E_{i,j}`, `i < j`, ordered by
///   superdiagonal (`E_{1,2}, E_{2,3}, ..., E_{1,3}, ...`).
/// * `heis_ze`: `x = (1,0,0)`, `y = (0,1,0)`, the central `z = (0,0,1)`, then
///   the standard basis of `Z^e`.
/// * `galpha`: `g_alpha = diag(1+sqrt 2, 1)` and the shear `h`.
/// * `dinf`: `t = (1, 0)` and `s = (0, 1)`.
/// * `z`: the standard basis.
/// * `product`: the concatenation of the factor generating sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GroupDescriptor {
    Ut { d: usize },
    HeisZe { e: usize },
    Galpha,
    Dinf,
    Z { n: usize },
    Product { factors: Vec<GroupDescriptor> },
}

impl GroupDescriptor {
    /// Flat direct product; nested products are spliced in.
    pub fn product(factors: Vec<GroupDescriptor>) -> Self {
        let mut flat = Vec::new();
        for f in factors {
            match f {
                GroupDescriptor::Product { factors } => flat.extend(factors),
                other => flat.push(other),
            }
        }
        GroupDescriptor::Product { factors: flat }
    }

    /// Factors of a product, or the group itself as a one-element list.
    pub fn factors(&self) -> Vec<GroupDescriptor> {
        match self {
            GroupDescriptor::Product { factors } => factors.clone(),
            other => vec![other.clone()],
        }
    }

    pub fn validate(&self) -> Result<(), GroupError> {
        match self {
            GroupDescriptor::Ut { d } if *d == 0 => {
                Err(GroupError::InvalidDescriptor("ut needs d >= 1".into()))
            }
            GroupDescriptor::Product { factors } => {
                for f in factors {
                    if matches!(f, GroupDescriptor::Product { .. }) {
                        return Err(GroupError::InvalidDescriptor(
                            "products must be flat".into(),
                        ));
                    }
                    f.validate()?;
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            GroupDescriptor::Ut { d } => GroupElement::Matrix(IntMatrix::identity(*d)),
            GroupDescriptor::HeisZe { e } => GroupElement::Heis {
                coord: HeisenbergCoord::identity(),
                z: vec![BigInt::default(); *e],
            },
            GroupDescriptor::Galpha => GroupElement::Quad(QuadMatrix::identity()),
            GroupDescriptor::Dinf => GroupElement::Dihedral(DihedralElement::identity()),
            GroupDescriptor::Z { n } => GroupElement::Vector(vec![BigInt::default(); *n]),
            GroupDescriptor::Product { factors } => {
                GroupElement::Product(factors.iter().map(|f| f.identity()).collect())
            }
        }
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        match self {
            GroupDescriptor::Ut { d } => {
                let mut gens = Vec::new();
                for k in 1..*d {
                    for i in 0..d - k {
                        gens.push(GroupElement::Matrix(IntMatrix::elementary(
                            *d,
                            i,
                            i + k,
                            BigInt::one(),
                        )));
                    }
                }
                gens
            }
            GroupDescriptor::HeisZe { e } => {
                let mut gens = Vec::new();
                for coord in [(1, 0, 0), (0, 1, 0), (0, 0, 1)] {
                    gens.push(GroupElement::Heis {
                        coord: HeisenbergCoord::new(coord.0, coord.1, coord.2),
                        z: vec![BigInt::default(); *e],
                    });
                }
                for i in 0..*e {
                    let mut z = vec![BigInt::default(); *e];
                    z[i] = BigInt::one();
                    gens.push(GroupElement::Heis {
                        coord: HeisenbergCoord::identity(),
                        z,
                    });
                }
                gens
            }
            GroupDescriptor::Galpha => vec![
                GroupElement::Quad(QuadMatrix::g_alpha()),
                GroupElement::Quad(QuadMatrix::shear()),
            ],
            GroupDescriptor::Dinf => vec![
                GroupElement::Dihedral(DihedralElement::new(1, false)),
                GroupElement::Dihedral(DihedralElement::new(0, true)),
            ],
            GroupDescriptor::Z { n } => (0..*n)
                .map(|i| {
                    let mut v = vec![BigInt::default(); *n];
                    v[i] = BigInt::one();
                    GroupElement::Vector(v)
                })
                .collect(),
            GroupDescriptor::Product { factors } => {
                let ids: Vec<GroupElement> = factors.iter().map(|f| f.identity()).collect();
                let mut gens = Vec::new();
                for (i, f) in factors.iter().enumerate() {
                    for g in f.generators() {
                        let mut tuple = ids.clone();
                        tuple[i] = g;
                        gens.push(GroupElement::Product(tuple));
                    }
                }
                gens
            }
        }
    }

    pub fn generator_count(&self) -> usize {
        match self {
            GroupDescriptor::Ut { d } => d * (d - 1) / 2,
            GroupDescriptor::HeisZe { e } => 3 + e,
            GroupDescriptor::Galpha | GroupDescriptor::Dinf => 2,
            GroupDescriptor::Z { n } => *n,
            GroupDescriptor::Product { factors } => {
                factors.iter().map(|f| f.generator_count()).sum()
            }
        }
    }

    /// Element denoted by a signed letter.
    pub fn letter(&self, letter: i64) -> Result<GroupElement, GroupError> {
        let gens = self.generators();
        letter_of(&gens, letter)
    }

    /// Left-to-right product of the generators named by `w`.
    pub fn evaluate_word(&self, w: &GeneratorWord) -> Result<GroupElement, GroupError> {
        evaluate_with(&self.generators(), &self.identity(), w)
    }

    /// Whether `x` has the shape of an element of this group. For `ut` the
    /// matrix must be unitriangular.
    pub fn contains(&self, x: &GroupElement) -> bool {
        match (self, x) {
            (GroupDescriptor::Ut { d }, GroupElement::Matrix(m)) => {
                m.dim() == *d && m.is_unitriangular()
            }
            (GroupDescriptor::HeisZe { e }, GroupElement::Heis { z, .. }) => z.len() == *e,
            (GroupDescriptor::Galpha, GroupElement::Quad(m)) => m.inv().is_ok(),
            (GroupDescriptor::Dinf, GroupElement::Dihedral(_)) => true,
            (GroupDescriptor::Z { n }, GroupElement::Vector(v)) => v.len() == *n,
            (GroupDescriptor::Product { factors }, GroupElement::Product(xs)) => {
                factors.len() == xs.len() && factors.iter().zip(xs).all(|(f, x)| f.contains(x))
            }
            _ => false,
        }
    }

    pub fn check(&self, x: &GroupElement) -> Result<(), GroupError> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(GroupError::Mismatch(format!(
                "element does not belong to {}",
                serde_json::to_string(self).unwrap_or_default()
            )))
        }
    }
}

/// Element named by a signed letter over an explicit generator list.
pub fn letter_of(gens: &[GroupElement], letter: i64) -> Result<GroupElement, GroupError> {
    let idx = letter.unsigned_abs() as usize;
    if letter == 0 {
        return Err(GroupError::ZeroLetter);
    }
    let g = gens.get(idx - 1).ok_or(GroupError::GeneratorOutOfRange {
        index: letter,
        count: gens.len(),
    })?;
    if letter > 0 {
        Ok(g.clone())
    } else {
        g.inv()
    }
}

/// Evaluates `w` over an explicit generator list.
pub fn evaluate_with(
    gens: &[GroupElement],
    identity: &GroupElement,
    w: &GeneratorWord,
) -> Result<GroupElement, GroupError> {
    let inverses: Vec<GroupElement> = gens.iter().map(|g| g.inv()).collect::<Result<_, _>>()?;
    let mut acc = identity.clone();
    for &l in w.letters() {
        let idx = l.unsigned_abs() as usize;
        if idx == 0 || idx > gens.len() {
            return Err(GroupError::GeneratorOutOfRange {
                index: l,
                count: gens.len(),
            });
        }
        let g = if l > 0 { &gens[idx - 1] } else { &inverses[idx - 1] };
        acc = acc.mul(g)?;
    }
    Ok(acc)
}
