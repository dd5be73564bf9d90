use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{ExtensionError, FiniteExtension};
use crate::group::{GroupDescriptor, GroupElement};
use crate::knapsack::KnapsackInstance;

/// Generalized knapsack: is `f_0 g_1^{n_1} f_1 ... g_k^{n_k} f_k = 1` for
/// natural `n_i`? `constants` holds `f_0..f_k`, `bases` holds `g_1..g_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GkpInstance {
    pub group: GroupDescriptor,
    pub constants: Vec<GroupElement>,
    pub bases: Vec<GroupElement>,
}

impl GkpInstance {
    pub fn new(
        group: GroupDescriptor,
        constants: Vec<GroupElement>,
        bases: Vec<GroupElement>,
    ) -> Result<Self, ExtensionError> {
        let inst = GkpInstance {
            group,
            constants,
            bases,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<(), ExtensionError> {
        if self.constants.len() != self.bases.len() + 1 {
            return Err(ExtensionError::Shape(format!(
                "{} bases need {} constants, got {}",
                self.bases.len(),
                self.bases.len() + 1,
                self.constants.len()
            )));
        }
        for x in self.constants.iter().chain(&self.bases) {
            self.group.check(x)?;
        }
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.bases.len()
    }

    pub fn evaluate(&self, n: &[BigInt]) -> Result<GroupElement, ExtensionError> {
        if n.len() != self.k() {
            return Err(ExtensionError::Shape(format!("expected {} exponents", self.k())));
        }
        let mut acc = self.constants[0].clone();
        for (i, g) in self.bases.iter().enumerate() {
            acc = acc.mul(&g.pow(&n[i])?)?.mul(&self.constants[i + 1])?;
        }
        Ok(acc)
    }

    pub fn is_solution(&self, n: &[BigInt]) -> Result<bool, ExtensionError> {
        Ok(self.evaluate(n)?.is_identity())
    }

    /// Largest `j` with `f_0, g_1, .., f_{j-1}, g_j` all in `H`.
    pub fn purity_level<O: FiniteExtension + ?Sized>(&self, o: &O) -> Result<usize, ExtensionError> {
        let mut j = 0;
        while j < self.k() && o.in_subgroup(&self.constants[j])? && o.in_subgroup(&self.bases[j])? {
            j += 1;
        }
        Ok(j)
    }

    pub fn impurity<O: FiniteExtension + ?Sized>(&self, o: &O) -> Result<usize, ExtensionError> {
        Ok(self.k() - self.purity_level(o)?)
    }

    pub fn is_pure<O: FiniteExtension + ?Sized>(&self, o: &O) -> Result<bool, ExtensionError> {
        Ok(self.impurity(o)? == 0)
    }
}

/// Moves every interior constant to the left, `g_i^n f_i = f_i (f_i^-1 g_i f_i)^n`,
/// giving the equivalent knapsack question `g'_1^{n_1} .. g'_k^{n_k} = f'_0^-1`
/// with the same solution set.
pub fn gkp_normalize(inst: &GkpInstance) -> Result<KnapsackInstance, ExtensionError> {
    let mut f = inst.constants.clone();
    let mut g = inst.bases.clone();
    for i in (1..=inst.k()).rev() {
        let fi = f[i].clone();
        let fi_inv = fi.inv()?;
        g[i - 1] = fi_inv.mul(&g[i - 1])?.mul(&fi)?;
        f[i - 1] = f[i - 1].mul(&fi)?;
        f[i] = fi.identity_like();
    }
    Ok(KnapsackInstance::new(inst.group.clone(), g, f[0].inv()?)?)
}
