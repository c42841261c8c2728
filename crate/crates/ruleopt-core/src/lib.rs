//! Core library for building inherently interpretable solutions to
//! scenario-uncertain optimization problems.
//!
//! Given a set of observed cost scenarios, the crate computes a small set of
//! candidate solutions together with a shallow univariate decision tree over
//! observed values that routes any scenario to one of those solutions. Trees
//! are built either by exact enumeration of level-wise split candidates or by
//! a greedy level-by-level heuristic, both decomposing the expected-cost
//! objective into nominal subproblems. The crate also emits the equivalent
//! mixed-integer model as LP text and can verify variable assignments against
//! it without a solver.
//!
//! The crate is `no_std` (with `alloc`); all I/O lives in the companion CLI
//! crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod baselines;
pub mod builder;
pub mod error;
pub mod generator;
pub mod lp;
pub mod mip;
pub mod problem;
pub mod rng;
pub mod scenario;
#[cfg(test)]
pub(crate) mod testdata;
pub mod tree;

pub use error::{Error, Result};
