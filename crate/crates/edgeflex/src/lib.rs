//! Exact lattice geometry for edge polytopes of finite simple graphs.
//!
//! The crate builds edge polytopes from graphs, produces full-dimensional
//! unimodularly equivalent copies, forms the reflexive polytopes
//! `Omega(P, Q) = conv((P x {1}) u (-Q x {-1}))`, and certifies their
//! properties with exact arithmetic throughout: facet enumeration by the
//! double description method over big integers, reflexivity certificates,
//! lattice-point enumeration, and integer-decomposition-property checks.
//!
//! No floating point is used anywhere.

pub mod dual;
pub mod graphs;
pub mod intlin;
pub mod lattice;
pub mod polytope;

pub use dual::{HRepresentation, ReflexivityCertificate};
pub use graphs::{BipartiteDecomposition, Graph, OddCyclePair};
pub use intlin::{IntegerMatrix, RationalMatrix, ReductionResult};
pub use lattice::{IdpReport, LatticePointSet};
pub use polytope::{LatticePolytope, UnimodularCopy};
