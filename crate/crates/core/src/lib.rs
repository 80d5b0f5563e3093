//! Exact computation of `Prob_r(G) = |G^r| / |G|`, the proportion of elements
//! of a finite group that admit an r-th root, together with brute-force
//! checks of the structural identities and inequalities this quantity obeys.
//!
//! Groups are enumerated: every backend (permutations, 2x2 matrices over a
//! finite field, finite abelian groups, Cayley tables, direct products and
//! quotients) is reduced to dense element ids with a multiplication rule, so
//! the root-counting and verification code is backend-agnostic.
//!
//! Data-parallel sweeps (power maps, element orders, catalog verification)
//! run on rayon when the default `parallel` feature is enabled and fall back
//! to plain iterators otherwise. [`Execution`] selects the strategy per call.

pub mod arith;
pub mod catalog;
pub mod density;
pub mod error;
pub mod fields;
pub mod groups;
pub mod par;
pub mod psl2;
pub mod roots;
pub mod spec_parser;

pub use error::{Error, Result};
pub use par::Execution;

/// Default cap on enumerated group orders.
pub const DEFAULT_CAP: usize = 200_000;
