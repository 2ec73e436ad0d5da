//! Exact-arithmetic toolkit for Cox rings of quotient singularities
//! `C^n/G` and candidate Cox rings of their resolutions, obtained through
//! tropical-guided toric ambient modifications.
//!
//! The crate is organized bottom-up:
//!
//! * [`arith`] — rationals and cyclotomic fields `Q(zeta_n)`, the scalar
//!   domain of everything else.
//! * [`lattice`] — integer linear algebra: Hermite/Smith normal forms,
//!   kernels modulo moduli, Gale duals.
//! * [`poly`] — sparse multivariate polynomials, monomial orders, Newton
//!   polytopes and sound irreducibility certificates.
//! * [`groebner`] — Buchberger-based ideal arithmetic: elimination,
//!   saturation, dimension, initial forms, ring-map kernels.
//! * [`cones`] — rational polyhedral cones and fans, stellar subdivision
//!   and toric resolution of a fan.
//! * [`groups`] — finite matrix groups: closure, derived subgroup,
//!   abelianization, conjugacy classes, ages.
//! * [`invariants`] — invariant-ring generators and eigen-homogenization.
//! * [`tropical`] — tropical hypersurfaces and prevarieties (inner normal
//!   fan convention).
//! * [`pipeline`] — the end-to-end resolution pipeline and its verifiers.
//! * [`fixtures`] — the built-in representations used by the test suite
//!   and the CLI.

pub mod arith;
pub mod budget;
pub mod cones;
pub mod fixtures;
pub mod groebner;
pub mod groups;
pub mod invariants;
pub mod lattice;
pub mod poly;
pub mod tropical;

pub use arith::{CycNum, CyclotomicField, Rational};
pub use budget::Budget;
