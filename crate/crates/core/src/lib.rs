//! Workbench for the chain of parameterized gap-preserving reductions between
//! coding problems (minimum distance, nearest codeword, sparse homogeneous
//! systems) and lattice problems (nearest vector, shortest vector).
//!
//! Everything here is exact: finite fields are runtime-parameterized `F_{p^d}`
//! with integer-coded elements, lattice arithmetic is arbitrary-precision
//! integers, and every reduction can be certified on desk-scale instances by
//! the brute-force oracles in [`oracles`].

pub mod bits;
pub mod codes;
pub mod error;
pub mod galois;
pub mod lattices;
pub mod matspace;
pub mod oracles;
pub mod pipeline;
pub mod problems;
pub mod reductions;

pub use error::{Error, Result};
