//! Membership of a group element in the evaluated language of an acyclic
//! automaton, with subset sum as a special case and the transfer of
//! instances to a subgroup of finite index.

mod automaton;
mod coset;
mod membership;

pub use automaton::{split_transitions, subsetsum_to_automaton, Automaton};
pub use coset::{decompose_coset, dinf_coset_table, transfer_to_subgroup, CosetTable};
pub use membership::{acyclic_membership, acyclic_membership_run, entry_growth_bound, MembershipRun};

use crate::group::GroupError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RationalError {
    #[error("automaton has a cycle")]
    Cyclic,
    #[error("state {state} out of range for an automaton with {states} states")]
    StateOutOfRange { state: usize, states: usize },
    #[error("transition label longer than one letter; split transitions first")]
    LongLabel,
    #[error("growth bound precondition violated: {0}")]
    BoundPrecondition(String),
    #[error("intermediate product has norm {norm}, above the growth bound {bound}")]
    NormBoundExceeded { norm: String, bound: String },
    #[error("invalid coset table: {0}")]
    InvalidCosetTable(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}
