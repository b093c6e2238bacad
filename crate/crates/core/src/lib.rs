//! Exact analysis of mixed polynomials carrying a polar torus action.
//!
//! The library decides polar weighted homogeneity of a mixed polynomial
//! f(z, z̄), computes its radial and polar weight systems, stratifies the
//! fiber F = f⁻¹(1) by coordinate support, and derives the topological
//! invariants of F: Euler characteristic, monodromy zeta function, divisor
//! form, connectivity and Betti numbers. A floating-point layer verifies the
//! underlying geometric identities on seeded random samples.
//!
//! All symbolic computation is exact (arbitrary-precision integers and
//! rationals); floats appear only in the verification layer.

pub mod exact;
pub mod families;
pub mod invariants;
pub mod numerics;
pub mod poly;
pub mod strata;
pub mod weights;
