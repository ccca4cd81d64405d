//! Exact arithmetic for regular matroids represented by totally unimodular
//! matrices: Jacobian groups, metric expansions, configuration polynomials,
//! point counts of configuration hypersurfaces over prime fields, and
//! p-torsion densities of expanded Jacobians.
//!
//! Everything in the correctness layer is exact (big integers and rationals,
//! no floating point). Ground sets are capped at 64 elements so that subsets
//! fit in `u64` bitmasks.

pub mod basis;
pub mod bounds;
pub mod corpus;
pub mod count;
pub mod density;
pub mod error;
pub mod expansion;
pub mod graph;
pub mod io;
pub mod jacobian;
pub mod matrix;
pub mod matroid;
pub mod poly;
pub mod psi;
pub mod snf;
pub mod verify;

pub use error::{Error, Result};

/// Largest ground-set size; subsets are stored as `u64` bitmasks.
pub const MAX_GROUND: usize = 64;

/// Largest prime accepted by the counting routines.
pub const MAX_PRIME: u64 = 31;

/// Point budget for exhaustive affine enumeration (p^n points).
pub const NAIVE_BUDGET: u128 = 100_000_000;

/// Point budget for the eliminative counting kernel (p^(n-1) assignments).
pub const ELIMINATIVE_BUDGET: u128 = 1_000_000_000;

/// Point budget for empirical density boxes (m_max^n points).
pub const EMPIRICAL_BUDGET: u128 = 100_000_000;
