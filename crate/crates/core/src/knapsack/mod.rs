//! Knapsack over `H3(Z) x Z^e`: the reduction to two-plus-`e` linear
//! equations and one quadratic equation, and a sound three-valued decider.

mod decide;
mod diophantine;
mod instance;

pub use decide::{
    decide_knapsack_h3, search_box, verify_certificate, Certificate, DecisionReport,
    KnapsackDecision, DEFAULT_MODULI, MODULAR_CAP,
};
pub use diophantine::{knapsack_to_diophantine, DiophantineSystem, LinearEquation, QuadraticEquation};
pub use instance::{int_exponents_to_nat, nat_solution_to_int, KnapsackInstance};

use crate::group::GroupError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KnapsackError {
    #[error("instance is not over H3(Z) x Z^e")]
    WrongGroup,
    #[error("expected {expected} exponents, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}
