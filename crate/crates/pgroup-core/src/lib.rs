//! Exact computational group theory for finite p-groups given as matrix
//! groups over cyclotomic fields `Q(zeta_N)` or over the integers.
//!
//! The crate enumerates finite matrix groups from generators, computes their
//! structural subgroups (center, commutator, Frattini), minimal generator
//! counts via the Burnside basis theorem with an independent brute-force
//! oracle, projective actions and their fixed loci, semi-invariance of
//! polynomials, and invariant sublattices of integer actions.  Everything is
//! exact: coefficients are arbitrary-precision rationals and all equalities
//! are decidable.

pub mod caps;
pub mod catalog;
pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod lattice;
pub mod matrix;
pub mod poly;
pub mod projective;
pub mod serial;

pub use caps::Caps;
pub use error::{Error, Result};
