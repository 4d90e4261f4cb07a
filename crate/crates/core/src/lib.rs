//! Exact verification toolkit for the triangle-density minimization problem.
//!
//! * [`graph`]: small graphs, canonical forms, isomorphism-free enumeration,
//!   induced densities and graph6 I/O.
//! * [`flag`]: flags over small types, exact products, lifting, averaging and
//!   the identity suite.
//! * [`extremal`]: the closed-form extremal curves, the extremal family of
//!   complete partite constructions and joins of graph limits.
//! * [`search`]: brute-force and heuristic oracles on concrete graphs.
//! * [`report`]: batch commands and machine-readable reports.

pub mod error;
pub mod extremal;
pub mod flag;
pub mod graph;
pub mod report;
pub mod search;

pub use error::{Error, Result};
pub use graph::Graph;

/// Exact rational carrier for all densities.
pub type Rational = num_rational::BigRational;
