//! Exact invariants of polarized metric graphs (pm-graphs) and coefficientwise
//! certificates for lower bounds on the phi invariant of cubic graphs.
//!
//! All arithmetic is over arbitrary-precision rationals. A pm-graph is given by
//! a model: a [`WeightedMultigraph`] whose edges carry exact or symbolic
//! lengths, plus a vertex weight `q` ([`PmGraph`]).

#![allow(clippy::needless_range_loop)]

pub mod canonical;
pub mod catalog;
pub mod certify;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod invariants;
pub mod io;
pub mod linalg;
pub mod parallel;
pub mod pm;
pub mod poly;
pub mod random;
pub mod rational;
pub mod selfcheck;

pub use catalog::{CatalogEntry, CatalogReport};
pub use certify::Certificate;
pub use error::{Error, Result};
pub use graph::{CanonicalKey, Edge, EdgeSpec, Length, WeightedMultigraph};
pub use invariants::{ExactValue, InvariantBundle, TypeProfile};
pub use parallel::Parallelism;
pub use pm::PmGraph;
pub use poly::{Monomial, SparsePoly};
pub use rational::Rational;
