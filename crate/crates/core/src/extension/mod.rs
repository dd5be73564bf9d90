//! Knapsack for a group from knapsack for a subgroup of finite index: the
//! generalized knapsack problem, its normalization, and purification.

mod instance;
mod oracle;
mod purify;

pub use instance::{gkp_normalize, GkpInstance};
pub use oracle::{CyclicExtension, DihedralExtension, FiniteExtension};
pub use purify::{
    decide_gkp, find_period, move_right, purify, purify_step, AffineEntry, AffineMap, GkpDecision,
    PureInstance,
};

use crate::group::GroupError;
use crate::knapsack::KnapsackError;
use crate::linear::LinearError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExtensionError {
    #[error("malformed instance: {0}")]
    Shape(String),
    #[error("element does not belong to the extension's group")]
    Foreign,
    #[error("element is not in the subgroup")]
    NotInSubgroup,
    #[error("move-right needs rho(g1 g2) = rho(g1)")]
    MoveRightPrecondition,
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Knapsack(#[from] KnapsackError),
    #[error(transparent)]
    Linear(#[from] LinearError),
}
