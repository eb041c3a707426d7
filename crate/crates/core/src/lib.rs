//! Signed graphs and their colourings, minors and quotients.
//!
//! The crate is organised by concern:
//!
//! * [`graph`], [`balance`], [`canon`]: the signed multigraph, switching,
//!   balance certificates and canonical forms up to switching isomorphism.
//! * [`color`]: balanced sets, the balanced chromatic number and its
//!   equivalent views (0-free colourings, homomorphisms to K̃ₖ⁺, circular
//!   colourings).
//! * [`minor`]: exact detectors for K̃ₜ-minors, odd and even-odd minors,
//!   K̃ₜ-subdivisions and the negative H-path dichotomy, with independently
//!   verified certificates.
//! * [`quotient`]: collapsing maximal connected balanced sets into a digon
//!   graph that is both a minor and a homomorphic image of the input.
//! * [`fraclp`]: the fractional balanced chromatic number by exact rational
//!   linear programming.
//! * [`harness`]: generators, deduplicated enumeration, property scans and
//!   reports.

pub mod balance;
pub mod canon;
pub mod color;
pub mod error;
pub mod fraclp;
pub mod graph;
pub mod harness;
pub mod minor;
pub mod quotient;
pub mod rational;
pub mod vset;

pub use balance::{is_balanced, max_positive_switching, walk_sign, BalanceResult, NegativeCycle};
pub use canon::{canonical_form, canonical_form_bounded, CanonicalForm};
pub use color::{chi_b, BalancedCover, ChiB};
pub use error::{Error, Result};
pub use fraclp::{chi_f, chi_fb, RationalWeighting};
pub use graph::{Edge, Sign, SignedGraph, SimpleGraph, SwitchingVector};
pub use quotient::{balanced_quotient, verify_quotient, QuotientResult};
pub use rational::Rational;
pub use vset::VertexSet;
