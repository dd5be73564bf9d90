//! Decision procedures, reduction compilers and brute-force oracles for the
//! subset sum and knapsack problems over finitely generated groups.

pub mod cocf;
pub mod extension;
pub mod group;
pub mod hardness;
pub mod harness;
pub mod json;
pub mod knapsack;
pub mod linear;
pub mod rational;
