//! Finite set-theoretic Yang-Baxter machinery: solutions and their
//! verifiers, constructions (dual, derived, cycle sets, semi-direct
//! products), structure-group presentations with exact abelianization,
//! affine actions of finite groups, and an exact word-problem engine for
//! symmetric solutions.
//!
//! Most capabilities have a runnable demo under `examples/`; the `ybx`
//! binary exposes the same operations on JSON files.

pub mod affine;
pub mod catalog;
pub mod constructions;
pub mod cycle;
pub mod enumerate;
pub mod group;
pub mod json;
pub mod lattice;
pub mod perm;
pub mod presentation;
pub mod snf;
pub mod solution;
pub mod word;

pub use perm::Perm;
pub use solution::{CheckMethod, FiniteSolution, SolutionReport};
