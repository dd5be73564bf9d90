//! Knapsack for groups whose word problem complement is context-free:
//! grammar closure operations, the knapsack language, Parikh images and
//! semilinear set algebra.

mod complement;
mod fixtures;
mod grammar;
mod hilbert;
mod hom;
mod lp;
mod nfa;
mod parikh;
mod pda;
mod pipeline;
mod semilinear;
mod triple;

pub use complement::{constraints, semilinear_complement, simple_parts, Atom};
pub use fixtures::{validate_coword_grammar, z2_coword_grammar, z_coword_grammar};
pub use grammar::{parse_grammar, Grammar, GrammarRepr, Symbol};
pub use hilbert::{feasible_nat, solve_nat, NatSolutions, DEFAULT_SOLVER_LIMIT};
pub use hom::{cfg_image, FreeMonoidHom};
pub use nfa::{cfg_intersect_regular, Nfa};
pub use pipeline::{build_knapsack_language, cocf_knapsack_report, decide_cocf_knapsack, power_letter, CocfReport};
pub use semilinear::{box_points, in_monoid, LinearSet, SemilinearSet, Vector};
pub use parikh::parikh_image;
pub use pda::{cfg_inverse_hom, inverse_hom_pda, pda_to_grammar, Pda, PdaMove};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CocfError {
    #[error("invalid grammar: {0}")]
    InvalidGrammar(String),
    #[error("letter {0:?} has no image")]
    UndefinedLetter(String),
    #[error("grammar disagrees with the group on {word:?} (nontrivial: {nontrivial})")]
    NotCoword { word: Vec<i64>, nontrivial: bool },
    #[error(transparent)]
    Group(#[from] crate::group::GroupError),
    #[error("Diophantine solver examined more than {0} candidates")]
    SolverLimit(usize),
    #[error("witness {0:?} is rejected by the co-word grammar")]
    WitnessRejected(Vec<u64>),
    #[error("expected a vector of dimension {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
}
