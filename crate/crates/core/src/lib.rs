//! Exact enumeration of O(N) tensor-model invariants.
//!
//! Rank-d invariants on 2n tensors are the points of the double coset
//! `S_n[S_2]^d \ S_2n^d / S_2n` (equivalently d-regular edge-colored graphs on
//! 2n vertices). The crate counts them four independent ways, realizes the
//! double-coset algebra at small size, and evaluates Gaussian correlators as
//! polynomials in N.

pub mod algebra;
pub mod bruteforce;
pub mod characters;
pub mod correlators;
pub mod counting;
pub mod error;
pub mod npoly;
pub mod partitions;
pub mod perm;
pub mod repmatrices;
pub mod series;
pub mod symplectic;
pub mod wreath;

pub use error::{Error, Result};
pub use npoly::NPolynomial;
pub use partitions::Partition;
pub use perm::Permutation;
