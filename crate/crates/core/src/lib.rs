//! Riccati equations over the normed division algebras ℝ, ℂ, ℍ and 𝕆.
//!
//! The crate is organised bottom-up:
//!
//! - [`algebra`]: Cayley–Dickson structure constants, algebra elements over
//!   exact rationals or `f64`, and the composition-law test suite.
//! - [`poly`] and [`vfield`]: polynomial vector fields with exact rational
//!   coefficients, Lie brackets, the Riccati generator families and bracket
//!   closure with an exact rank test.
//! - [`riccati`]: coefficient expressions, the Riccati right-hand side, RK4
//!   integration, the real superposition rule and the conformal form.
//! - [`lift`]: projective lines with two charts and the linear lifts whose
//!   projections reproduce Riccati dynamics.
//! - [`hamiltonian`]: radial symplectic forms, Hamiltonian functions and
//!   Poisson brackets for the real-coefficient families.
//! - [`schrodinger`]: the stationary quaternionic Schrödinger reduction.

pub mod algebra;
pub mod error;
pub mod hamiltonian;
pub mod io;
pub mod lift;
pub mod linalg;
pub mod ode;
pub mod poly;
pub mod riccati;
pub mod scalar;
pub mod schrodinger;
pub mod vfield;

pub use algebra::{Algebra, Element, StructureConstants};
pub use error::{Error, Result};
pub use scalar::{Rational, Scalar};
