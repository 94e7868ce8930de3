//! Exact values and bounds for the k-Harborth constant `g^k(G)` of finite
//! abelian groups.
//!
//! `g^k(G)` is the smallest `t` such that every `t`-element subset of `G`
//! contains `k` distinct elements summing to zero. It equals one more than
//! the largest k-zero-sum-free subset of `G` (and `|G| + 1` when `G` itself
//! is k-zero-sum free).
//!
//! * [`group`]: invariant-factor groups and index arithmetic.
//! * [`set`] and [`subsum`]: element sets, subsums and freeness checks.
//! * [`solver`]: exact branch-and-bound search with symmetry pruning, plus a
//!   brute-force oracle.
//! * [`constructions`]: explicit k-zero-sum-free sets giving lower bounds.
//! * [`bounds`]: closed-form values and bounds, aggregated per `(G, k)`.
//! * [`cli`]: the command-line front end.

pub mod bounds;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod group;
pub mod num;
pub mod set;
pub mod solver;
pub mod subsum;

pub use error::{Error, Result};
pub use group::{abelian_groups_of_order, Element, GroupSpec, HalvingDecomposition};
pub use set::ElementSet;
pub use solver::{
    brute_force_oracle, exists_free_of_size, max_zero_sum_free, Decision, ExactResult,
    SearchBudget, Symmetry,
};
pub use subsum::{
    dsh_check, is_k_zero_sum_free, k_subsums, sigma, subsums_up_to, DshCheck, SubsumTable,
};
