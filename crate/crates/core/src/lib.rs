//! Exact codegree-squared sums for k-uniform hypergraphs.
//!
//! The crate is organised bottom-up:
//!
//! * [`vertex_set`] and [`hypergraph`]: bitmask vertex sets, colex ranks, the
//!   hypergraph value type, codegree vectors and `co2`.
//! * [`families`]: stars, `B(n,k,s)`, the Hilton-Milner families `H` and `A`,
//!   the Fano plane, with closed forms for their `co2`.
//! * [`props`]: intersection properties, matching/covering numbers and
//!   path/cycle containment.
//! * [`bounds`]: exact rational evaluation of the codegree inequalities and
//!   the classical edge-count bounds.
//! * [`search`]: certified maximisation of `co2` under downward-closed
//!   constraints, by branch-and-bound and by plain enumeration.

pub mod binom;
pub mod bounds;
pub mod error;
pub mod families;
pub mod hypergraph;
pub mod iso;
pub mod props;
pub mod search;
pub mod vertex_set;

pub use error::{Error, Result};
pub use hypergraph::{CodegreeVector, Hypergraph};
pub use vertex_set::VertexSet;
