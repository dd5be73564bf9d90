//! Compilers for the two hardness reductions: 3CNF satisfiability to subset
//! sum over `G_alpha`, and polynomial equations to exponential expressions,
//! knapsack instances and four-subgroup membership over `H3(Z)^d x Z^e`.

mod alpha;
mod cnf;
mod expression;
mod four;
mod poly;
mod subsetsum;

pub use alpha::{alpha_cube_power, alpha_inequality_holds, alpha_value, check_digit_uniqueness, AlphaDigits};
pub use cnf::CnfFormula;
pub use expression::{
    check_blocks, expression_to_knapsack, system_to_expression, ExponentialExpression,
    ExpressionKnapsack,
};
pub use four::{blocks_to_four_subgroups, sequence_to_four_subgroups, FourSubgroupInstance};
pub use poly::{
    complete_assignment, polynomial_to_system, PolyEquation, PolyEquationSystem, Polynomial,
    COEFF_SUM_GUARD,
};
pub use subsetsum::{
    assignment_to_subset, cnf_to_subsetsum, digits_word, shear_word, subset_value,
    subsetsum_numbers, SubsetSumReduction,
};

use crate::group::GroupError;
use crate::knapsack::KnapsackError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HardnessError {
    #[error("malformed clause: {0}")]
    MalformedClause(String),
    #[error("DIMACS parse error: {0}")]
    Dimacs(String),
    #[error("digit {0} outside 0..=5")]
    DigitOutOfRange(u8),
    #[error("variable {0} is used but not declared")]
    UndeclaredVariable(String),
    #[error("system must contain exactly one equation x0 = a")]
    MissingAnchor,
    #[error("block structure violated: {0}")]
    BlockInvariant(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Knapsack(#[from] KnapsackError),
}
