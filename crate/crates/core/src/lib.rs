//! Exact-arithmetic toolkit around maxout networks and (virtual) extended
//! formulations: difference decompositions into monotone networks, epigraph
//! lifts, Newton polytopes, Minkowski calculus, exact lexicographic linear
//! programming, and the certificate pipeline tying them together.
//!
//! Everything computes over arbitrary-precision rationals; all identities the
//! crate checks (`f = g - h`, `P + Q = R`, support equalities) hold exactly,
//! with zero tolerance.

pub mod audits;
pub mod error;
pub mod extended_formulation;
pub mod instances;
pub mod json;
pub mod lex_lp;
pub mod maxout_net;
pub mod monotone_split;
pub mod polytopes;
pub mod rational;
pub mod sampling;

pub use error::{Error, Result};
pub use rational::Rational;
