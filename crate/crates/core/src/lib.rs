//! Finite models of real quotient stacks, stacky curves and gerbes.
//!
//! The crate computes Galois cohomology `H¹(ℤ/2, Γ)` of finite groups with an involution,
//! real loci and inertia of finite quotient stacks, and the cohomological counts attached
//! to stacky curves and to gerbes over real curves described by monodromy.

pub mod cohomology;
pub mod curve;
pub mod gerbe;
pub mod group;
pub mod partition;
pub mod perm;
pub mod quotient;
pub mod schema;
