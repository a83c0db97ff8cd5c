//! Algebraic structures behind anyon systems built from quantum tori with
//! real multiplication.
//!
//! The crate computes and verifies, in exact arithmetic wherever the objects
//! are exact:
//!
//! - continued fractions of quadratic irrationalities, GL₂(ℤ) actions,
//!   fixing matrices and reduced-matrix factorizations ([`quadratic`]);
//! - Bratteli diagrams, telescoping, path counting, ordered K₀ of stationary
//!   systems and dimension functions ([`bratteli`]);
//! - fusion systems, Verlinde checks, the S̃-matrix of the two-label systems
//!   with `x₁x₁ = Tr(g)·x₁ + x₀`, and K₀-class bookkeeping for basic modules
//!   ([`fusion`]);
//! - fusion-path bases, F/R matrices, pentagon/hexagon residuals and braid
//!   group representations ([`anyon`]);
//! - clock/shift approximate generators of the quantum torus and quantum
//!   dilogarithm pentagon identities ([`qtorus`]).
//!
//! Floating point enters only where the data is genuinely numerical
//! (unitary matrices, residuals); every tolerance is a named constant in
//! [`tol`].

// Index-driven loops mirror the matrix formulas they implement.
#![allow(clippy::needless_range_loop)]

pub mod anyon;
pub mod bratteli;
pub mod fusion;
pub mod intmat;
pub mod linalg;
pub mod qtorus;
pub mod quadratic;
pub mod tol;
pub mod util;

pub mod acceptance;

pub use quadratic::{CFExpansion, QuadExpr, QuadraticIrrational, UnimodularMatrix};
