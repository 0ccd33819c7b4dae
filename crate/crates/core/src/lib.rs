//! Exact search for non-row 0/1 vectors in the row space of a graph's
//! adjacency matrix.
//!
//! For a simple graph with at least one edge, a *witness* is a non-zero
//! 0/1 vector that lies in the rational row space of `A(Γ)` but is not
//! itself a row. [`witness::find_witness`] tries structural constructions
//! first and falls back to a brute-force scan; every witness carries a
//! coefficient vector `c` with `Aᵀc = x` that is re-checked in exact
//! arithmetic.

pub mod error;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod harness;
pub mod linalg;
pub mod oracle;
pub mod witness;

mod clock;

pub use error::{Error, Result};
pub use graph::{Diameter, Graph, MultiplicityVector, PathWitnessContext};
pub use graph6::{parse_graph6, write_graph6};
pub use linalg::{adjacency_matrix, solve_membership, MembershipCertificate, RationalMatrix, RowSpace};
pub use witness::{find_witness, verify_witness, SearchOptions, Strategy, Witness};
