//! Complex-graph calculus for Gaussian pure states and their photon-number
//! conserving (Schwinger) nullifiers.
//!
//! A state on `n` qumodes is described by its adjacency matrix `K`
//! ([`graph::AdjacencyMatrix`]). A quadratic observable `â†Mâ` with Hermitian `M`
//! ([`schwinger::HermitianGenerator`]) annihilates the state exactly when
//! `MK + (MK)ᵀ = 0` ([`nullifier::is_nullifier`]); [`fock`] checks the same
//! claims by brute force in a truncated Fock space.

pub mod error;
pub mod fock;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod nullifier;
pub mod schwinger;
pub mod states;

pub use error::{Error, Result};
pub use graph::AdjacencyMatrix;
pub use schwinger::{Axis, HermitianGenerator, SchwingerExpression, SchwingerTerm};
