//! Derivative-free minimization with quadratic models on random
//! two-dimensional subspaces.
//!
//! The crate contains the optimizer ([`solver`]), its building blocks
//! ([`geometry`], [`quadmodel`], [`trs`]), a suite of classic test functions
//! ([`problems`]) and a benchmark harness that produces performance and data
//! profiles ([`harness`]).

pub mod error;
pub mod geometry;
pub mod harness;
pub mod problems;
pub mod quadmodel;
pub mod real17;
pub mod solver;
pub mod trs;

pub use error::{Error, Result};
pub use solver::{solve, CountingObjective, SolveResult, SolverConfig};
