//! Exact solvers for envy-free house allocation with minimum total subsidy.
//!
//! `n` agents each receive one of `m >= n` houses; every agent has a
//! nonnegative rational utility for every house. An outcome pairs an
//! allocation with a nonnegative subsidy vector and is envy-free when no
//! agent prefers another agent's house-plus-subsidy to her own. This crate
//! computes envy-free outcomes whose total subsidy is minimum:
//!
//! * exactly, over arbitrary-precision rationals ([`model::Rational`]);
//! * in polynomial time when `m = n` ([`solvers::solve_equal`]), when
//!   `m - n` is a small constant ([`solvers::solve_subset`]), or when all
//!   agents share one utility function ([`solvers::solve_identical`]);
//! * by brute force as an independent cross-check ([`solvers::brute_force`]).
//!
//! The general problem is NP-hard; [`reduction`] generates instances from
//! vertex-cover inputs that realize the hardness construction.

pub mod envy;
mod error;
pub mod matching;
pub mod model;
pub mod reduction;
pub mod solvers;

pub use error::{Error, Result};
pub use model::{
    first_envy_violation, is_envy_free, Allocation, EnvyViolation, Instance, Outcome, Rational,
    SubsidyVector,
};
pub use solvers::{solve, solve_with, Algorithm, SolveOptions, SolveReport, Strategy};
