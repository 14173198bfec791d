//! Exact residual finiteness growth for small finitely generated groups.
//!
//! For a group `G` with a fixed finite generating set and an element `g`,
//! `k(g)` is the order of the smallest finite quotient of `G` in which `g`
//! survives, and `F(n)` is the maximum of `k` over the word-metric ball of
//! radius `n`. The modules below compute these quantities exactly (or as
//! clearly labelled bounds) for:
//!
//! * [`arith`]: the integers, free abelian groups and quadratic integer rings;
//! * [`quotsearch`]: finitely presented groups, by exhaustive search over
//!   permutation images;
//! * [`nilpotent`]: unitriangular integer matrix groups;
//! * [`slk`]: `SL_k(Z)` through its congruence quotients;
//! * [`grig`]: the first Grigorchuk group acting on the binary tree;
//! * [`harness`]: growth tables, verification suites, the result cache and
//!   the command line front end.

pub mod arith;
pub mod ball;
pub mod error;
pub mod grig;
pub mod harness;
pub mod nilpotent;
pub mod quotsearch;
pub mod slk;
pub mod witness;
pub mod word;

pub use error::{Error, Result};
pub use witness::{QuotientWitness, WitnessData, WitnessKind};
pub use word::{Letter, Word};

/// Version string written into reports and cache records.
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
