use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::ExtensionError;
use crate::group::{GroupDescriptor, GroupElement};
use crate::linear::solve_linear_nat;

/// A group `G` with a subgroup `H` of finite index, a system of right coset
/// representatives and a knapsack decider for `H`.
pub trait FiniteExtension {
    fn group(&self) -> &GroupDescriptor;

    /// Representatives `R`, the first being the identity.
    fn representatives(&self) -> &[GroupElement];

    /// `g = h r` with `h` in `H` and `r` the representative of index `i`.
    fn decompose(&self, g: &GroupElement) -> Result<(GroupElement, usize), ExtensionError>;

    /// Index of `rho(g)`.
    fn rho(&self, g: &GroupElement) -> Result<usize, ExtensionError> {
        Ok(self.decompose(g)?.1)
    }

    fn in_subgroup(&self, g: &GroupElement) -> Result<bool, ExtensionError> {
        Ok(self.rho(g)? == 0)
    }

    /// Natural exponents with `prod bases[i]^{x_i} = target`, or `None`.
    /// All inputs lie in `H`.
    fn decide_subgroup_knapsack(
        &self,
        bases: &[GroupElement],
        target: &GroupElement,
    ) -> Result<Option<Vec<BigInt>>, ExtensionError>;
}

/// The infinite dihedral group over `H = {(n, 0)}`, with representatives
/// `(0,0)` and `(0,1)`; knapsack in `H = Z` is one linear equation.
#[derive(Debug, Clone)]
pub struct DihedralExtension {
    group: GroupDescriptor,
    reps: Vec<GroupElement>,
}

impl Default for DihedralExtension {
    fn default() -> Self {
        DihedralExtension {
            group: GroupDescriptor::Dinf,
            reps: vec![GroupElement::dihedral(0, false), GroupElement::dihedral(0, true)],
        }
    }
}

impl FiniteExtension for DihedralExtension {
    fn group(&self) -> &GroupDescriptor {
        &self.group
    }

    fn representatives(&self) -> &[GroupElement] {
        &self.reps
    }

    fn decompose(&self, g: &GroupElement) -> Result<(GroupElement, usize), ExtensionError> {
        match g {
            GroupElement::Dihedral(x) => Ok((
                GroupElement::Dihedral(crate::group::DihedralElement::new(x.shift.clone(), false)),
                usize::from(x.flip),
            )),
            _ => Err(ExtensionError::Foreign),
        }
    }

    fn decide_subgroup_knapsack(
        &self,
        bases: &[GroupElement],
        target: &GroupElement,
    ) -> Result<Option<Vec<BigInt>>, ExtensionError> {
        let shift = |g: &GroupElement| match g {
            GroupElement::Dihedral(x) if !x.flip => Ok(x.shift.clone()),
            _ => Err(ExtensionError::NotInSubgroup),
        };
        let a: Vec<BigInt> = bases.iter().map(shift).collect::<Result<_, _>>()?;
        Ok(solve_linear_nat(&a, &shift(target)?)?)
    }
}

/// `Z` over `H = mZ`, representatives `0..m`.
#[derive(Debug, Clone)]
pub struct CyclicExtension {
    modulus: BigInt,
    group: GroupDescriptor,
    reps: Vec<GroupElement>,
}

impl CyclicExtension {
    pub fn new(modulus: u32) -> Self {
        assert!(modulus >= 1);
        CyclicExtension {
            modulus: BigInt::from(modulus),
            group: GroupDescriptor::Z { n: 1 },
            reps: (0..modulus as i64).map(|r| GroupElement::vector(&[r])).collect(),
        }
    }

    fn value(g: &GroupElement) -> Result<BigInt, ExtensionError> {
        match g {
            GroupElement::Vector(v) if v.len() == 1 => Ok(v[0].clone()),
            _ => Err(ExtensionError::Foreign),
        }
    }
}

impl FiniteExtension for CyclicExtension {
    fn group(&self) -> &GroupDescriptor {
        &self.group
    }

    fn representatives(&self) -> &[GroupElement] {
        &self.reps
    }

    fn decompose(&self, g: &GroupElement) -> Result<(GroupElement, usize), ExtensionError> {
        let x = Self::value(g)?;
        let r = x.mod_floor(&self.modulus);
        let idx = usize::try_from(&r).expect("small modulus");
        Ok((GroupElement::Vector(vec![x - r]), idx))
    }

    fn decide_subgroup_knapsack(
        &self,
        bases: &[GroupElement],
        target: &GroupElement,
    ) -> Result<Option<Vec<BigInt>>, ExtensionError> {
        let check = |x: BigInt| {
            if x.mod_floor(&self.modulus).is_zero() {
                Ok(x)
            } else {
                Err(ExtensionError::NotInSubgroup)
            }
        };
        let a: Vec<BigInt> = bases.iter().map(|g| Self::value(g).and_then(check)).collect::<Result<_, _>>()?;
        let t = check(Self::value(target)?)?;
        Ok(solve_linear_nat(&a, &t)?)
    }
}
