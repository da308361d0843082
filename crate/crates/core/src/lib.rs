//! Out-of-order membership and evaluation for regular languages and finite
//! semigroups.
//!
//! A word of known length `n` arrives as `(letter, position, n)` events in an
//! arbitrary order. The crate provides streaming evaluators for the different
//! space regimes, the algebraic tests that decide which regime applies, fooling
//! set constructions for lower bounds, and a harness that measures how much
//! state each evaluator actually keeps.

pub mod algebra;
pub mod langkit;
pub mod eval;
pub mod special;
pub mod harness;
pub mod fooling;
pub mod oracles;
pub mod cli;
