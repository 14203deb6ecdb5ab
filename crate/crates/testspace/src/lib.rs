//! Finite test spaces and the states they carry.
//!
//! A *test space* is a finite set of outcomes together with a family of
//! tests, where each test is the set of mutually exclusive outcomes of one
//! measurement you could perform on a system. A *state* assigns a
//! probability to every outcome such that each test's outcomes sum to one.
//! Classical probability (a single test), quantum measurement statistics,
//! and nonsignalling boxes all fit in this frame, which makes test spaces a
//! convenient common ground for comparing probabilistic theories.
//!
//! The crate is organised bottom-up:
//!
//! - [`space`]: the combinatorial layer. [`space::TestSpace`] plus
//!   structural validation and a Greechie diagram export.
//! - [`statespace`]: the convex layer. The state polytope of a space, its
//!   dimension, vertex enumeration, and informationally complete frames
//!   ([`statespace::Frame`]) whose members form a single repeatable
//!   measurement that pins down any state from its statistics.
//! - [`composite`]: joint states on Cartesian products of spaces, direct
//!   (uncorrelated) products, marginals and conditionals, nonsignalling
//!   checks, and the permutation machinery behind symmetry.
//! - [`definetti`]: exchangeable sequences of joint states, mixture
//!   generation and recovery, support certification for would-be mixtures
//!   over pseudo-states, and Bayesian updating of a mixture from observed
//!   outcomes.
//! - [`quantum`]: density operators and projective tests, used both to
//!   embed quantum statistics into the test-space picture and to exhibit
//!   an exchangeable quantum state whose statistics stay exchangeable but
//!   whose entanglement no mixture of product states can reproduce.
//!
//! The crate is `no_std` (it needs only `alloc`), deterministic, and free
//! of external numerical dependencies: the simplex solver, eigensolver,
//! and least-squares machinery are self-contained and dense, sized for the
//! small spaces this domain actually produces.
//!
//! # Example
//!
//! ```
//! use testspace::space::TestSpace;
//! use testspace::statespace::StatePolytope;
//!
//! // Three overlapping tests on seven outcomes.
//! let space = TestSpace::overlapping_example();
//! let polytope = StatePolytope::analyze(&space).unwrap();
//! assert_eq!(polytope.dimension(), 5);
//! let frame = polytope.frame().unwrap();
//! assert_eq!(frame.members().len(), 5);
//! ```

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod composite;
pub mod definetti;
mod error;
mod index;
mod linalg;
pub mod quantum;
mod rng;
mod simplex;
pub mod space;
pub mod statespace;

pub use error::{Error, Result};
// Complex scalars appear in the public quantum API.
pub use num_complex::Complex64;

/// Numerical tolerances shared across the crate.
///
/// Every comparison in the crate funnels through one of these named
/// constants so that the accuracy contract is visible in one place.
pub mod tol {
    /// Equality tolerance for probabilities, normalization sums, and
    /// symmetry or nonsignalling deviations.
    pub const EQUALITY: f64 = 1e-9;
    /// Slack below zero or above one tolerated in a probability entry
    /// before construction fails; entries inside the slack are clamped.
    pub const ENTRY_SLACK: f64 = 1e-12;
    /// Convergence tolerance on linear-program objectives.
    pub const LP_OBJECTIVE: f64 = 1e-7;
    /// Residual norm below which a mixture recovery counts as exact.
    pub const RECOVERY_RESIDUAL: f64 = 1e-7;
    /// Weights below this are pruned from recovered mixtures.
    pub const WEIGHT_PRUNE: f64 = 1e-10;
    /// Condition-number ceiling for frame basis acceptance.
    pub const CONDITION_LIMIT: f64 = 1e10;
    /// Probabilities at or below this cannot be conditioned on.
    pub const ZERO_PROBABILITY: f64 = 1e-12;
}

/// Hard size guards for operations with exponential blow-up.
pub mod limits {
    /// Vertex enumeration refuses spaces with more outcomes than this.
    pub const MAX_VERTEX_OUTCOMES: usize = 24;
    /// Joint tensors may not exceed this many entries.
    pub const MAX_TENSOR_ENTRIES: usize = 10_000_000;
    /// Symmetrization averages over `n!` permutations; `n` is capped here.
    pub const MAX_SYMMETRIZE_SYSTEMS: usize = 6;
    /// Density operators on tensor powers are capped at this many systems.
    pub const MAX_QUANTUM_SYSTEMS: usize = 10;
}
