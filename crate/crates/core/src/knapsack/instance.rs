use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::KnapsackError;
use crate::group::{GroupDescriptor, GroupElement};

/// Is `g_1^{e_1} ... g_k^{e_k} = g` for natural exponents `e_i`?
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnapsackInstance {
    pub group: GroupDescriptor,
    pub bases: Vec<GroupElement>,
    pub target: GroupElement,
}

impl KnapsackInstance {
    pub fn new(
        group: GroupDescriptor,
        bases: Vec<GroupElement>,
        target: GroupElement,
    ) -> Result<Self, KnapsackError> {
        let inst = KnapsackInstance {
            group,
            bases,
            target,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<(), KnapsackError> {
        for x in self.bases.iter().chain(std::iter::once(&self.target)) {
            self.group.check(x)?;
        }
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.bases.len()
    }

    /// `g_1^{e_1} ... g_k^{e_k}`; negative exponents are allowed here.
    pub fn evaluate(&self, exponents: &[BigInt]) -> Result<GroupElement, KnapsackError> {
        if exponents.len() != self.bases.len() {
            return Err(KnapsackError::Arity {
                expected: self.bases.len(),
                got: exponents.len(),
            });
        }
        let mut acc = self.group.identity();
        for (g, e) in self.bases.iter().zip(exponents) {
            acc = acc.mul(&g.pow(e)?)?;
        }
        Ok(acc)
    }

    pub fn is_solution(&self, exponents: &[BigInt]) -> Result<bool, KnapsackError> {
        Ok(self.evaluate(exponents)? == self.target)
    }
}

/// Replaces every base `g_i` by the pair `g_i, g_i^{-1}`, so that natural
/// solutions of the result correspond to integer solutions of `inst`.
pub fn int_exponents_to_nat(inst: &KnapsackInstance) -> Result<KnapsackInstance, KnapsackError> {
    let mut bases = Vec::with_capacity(2 * inst.bases.len());
    for g in &inst.bases {
        bases.push(g.clone());
        bases.push(g.inv()?);
    }
    Ok(KnapsackInstance {
        group: inst.group.clone(),
        bases,
        target: inst.target.clone(),
    })
}

/// Maps a natural solution of [`int_exponents_to_nat`] back to integers.
pub fn nat_solution_to_int(x: &[BigInt]) -> Vec<BigInt> {
    x.chunks(2).map(|c| &c[0] - &c[1]).collect()
}
