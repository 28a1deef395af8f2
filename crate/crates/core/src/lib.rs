//! Exact star complement search and verification.
//!
//! Given a graph `H` and a real algebraic number `μ` of degree at most two,
//! the engine enumerates the graphs `G` in which `H` is a star complement for
//! `μ`, optionally restricted to regular `G`, and certifies every result with
//! exact arithmetic. Closed-form tooling for complete bipartite complements
//! `K_{t,s}` and a catalog of named graphs sit on top of the engine.

pub mod algebra;
pub mod catalog;
pub mod engine;
pub mod error;
pub mod graph;
pub mod kts;

pub use algebra::{AlgebraicNumber, FieldMatrix, IntMatrix, IntPolynomial, Rational};
pub use engine::{
    CandidateVector, Certificate, CompatLabel, RegularMode, SearchOptions, StarContext, StarSolution,
};
pub use error::{Error, Result};
pub use graph::{CanonicalForm, Graph, SrgParams};
