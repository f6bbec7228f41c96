//! Brute-force oracles used to cross-check refinement and contraction.

mod enumerate;
mod naive;

pub use enumerate::{
    exhaustive_min_edges, exhaustive_min_edges_with, exhaustive_min_worlds,
    exhaustive_min_worlds_with, EnumerationBudget,
};
pub use naive::{naive_k_bisim, naive_pointed, naive_table};
