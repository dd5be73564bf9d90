use serde::{Deserialize, Serialize};

use super::{check_blocks, ExponentialExpression, HardnessError};
use crate::group::{GroupDescriptor, GroupElement};

/// Is `target` in `G_1 G_2 G_3 G_4`, each `G_i` given by generators?
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FourSubgroupInstance {
    pub group: GroupDescriptor,
    pub subgroups: [Vec<GroupElement>; 4],
    pub target: GroupElement,
}

impl FourSubgroupInstance {
    /// Generators of `G_1`, then `G_2`, and so on. As every `G_i` is abelian,
    /// `G_1 G_2 G_3 G_4` is the product of the cyclic groups they generate,
    /// in this order.
    pub fn cyclic_sequence(&self) -> Vec<GroupElement> {
        self.subgroups.iter().flatten().cloned().collect()
    }
}

/// Rearranges a product of cyclic subgroups whose generators split into
/// blocks of length at most four, elements of different blocks commuting:
/// `G_i` is generated by the elements at position `i` of their block.
pub fn sequence_to_four_subgroups(
    group: &GroupDescriptor,
    seq: &[GroupElement],
    blocks: &[usize],
    target: &GroupElement,
) -> Result<FourSubgroupInstance, HardnessError> {
    check_blocks(seq, blocks)?;
    let mut subgroups: [Vec<GroupElement>; 4] = Default::default();
    let mut pos = 0;
    for &b in blocks {
        for (i, g) in seq[pos..pos + b].iter().enumerate() {
            subgroups[i].push(g.clone());
        }
        pos += b;
    }
    Ok(FourSubgroupInstance {
        group: group.clone(),
        subgroups,
        target: target.clone(),
    })
}

/// Four-subgroup form of the product `prod <g_i>` of the bases of `e`.
pub fn blocks_to_four_subgroups(
    e: &ExponentialExpression,
    target: &GroupElement,
) -> Result<FourSubgroupInstance, HardnessError> {
    let blocks = e
        .blocks
        .clone()
        .ok_or_else(|| HardnessError::BlockInvariant("expression has no block structure".into()))?;
    sequence_to_four_subgroups(&e.group, &e.bases(), &blocks, target)
}
