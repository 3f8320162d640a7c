//! Exact-arithmetic Lie theory: root systems of types A–G, Chevalley bases
//! and their compact real forms, explicit finite-dimensional modules with
//! weight-space decompositions, the 2-step nilpotent metric Lie algebras
//! `N = U ⊕ g0` built from those modules, weight admissibility and its
//! classification tables, and rational totally geodesic subalgebras.
//!
//! Every number in this crate is an arbitrary-precision rational or Gaussian
//! rational; there is no floating point anywhere. All derived bases and
//! tables are deterministic.

pub mod error;
pub mod scalar;
pub mod matrix;
pub mod root;
pub mod chevalley;
pub mod module;
pub mod nilalg;
pub mod admissible;
pub mod geodesic;
pub mod cli;

pub use error::{LieqError, Result};
