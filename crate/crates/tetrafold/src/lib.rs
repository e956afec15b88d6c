//! Coarse-grained protein structure prediction on the diamond lattice.
//!
//! A chain of N residues is encoded as N − 1 tetrahedral bond directions
//! (turns), symmetry-fixed to 2N − 7 free bits. The crate provides the
//! turn-space energy oracle, the diagonal bit-space Hamiltonian with contact
//! ancillas, quadratization to QUBO, classical and variational solvers,
//! quantum resource accounting, an MSA-based target screener, and structure
//! output with alignment metrics.

pub mod energy;
pub mod error;
pub mod hamiltonian;
pub mod model;
pub mod qubo;
pub mod resources;
pub mod screener;
pub mod solvers;
pub mod structio;

pub use error::{Error, Result};
