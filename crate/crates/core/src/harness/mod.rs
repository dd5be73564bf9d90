//! Brute-force oracles, the instance file schema, random instance
//! generators and the command line front end.

pub mod cli;
mod generate;
mod instance;
mod oracle;

pub use generate::{
    random_acyclic_automaton, random_cnf, random_dinf_gkp, random_element, random_h3z_knapsack,
    random_word, random_z_knapsack,
};
pub use instance::{AratmpInstance, CocfInstance, ExpressionInstance, InstanceFile};
pub use oracle::{
    bounded_product_membership, brute_force_aratmp, brute_force_expression, brute_force_knapsack,
    brute_force_subsetsum, dinf_gkp_exact, pottier_bound, zn_knapsack_exact, BoxAnswer,
    OracleBudget,
};

use std::time::Duration;

use crate::cocf::CocfError;
use crate::extension::ExtensionError;
use crate::group::GroupError;
use crate::hardness::HardnessError;
use crate::knapsack::KnapsackError;
use crate::linear::LinearError;
use crate::rational::RationalError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HarnessError {
    #[error("invalid budget: {0}")]
    InvalidBudget(String),
    #[error("search needs {needed} points, cap is {cap}")]
    CapExceeded { needed: String, cap: u64 },
    #[error("wall-clock cap of {0:?} exceeded")]
    Timeout(Duration),
    #[error("expected a {expected} instance, found {found}")]
    WrongKind { expected: String, found: String },
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Knapsack(#[from] KnapsackError),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
    #[error(transparent)]
    Rational(#[from] RationalError),
    #[error(transparent)]
    Hardness(#[from] HardnessError),
    #[error(transparent)]
    Cocf(#[from] CocfError),
    #[error(transparent)]
    Linear(#[from] LinearError),
}
