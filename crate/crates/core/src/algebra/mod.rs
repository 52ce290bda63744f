//! Sparse exact graded-commutative algebra.
//!
//! Degree-1 generators anticommute and square to zero, degree-2 generators
//! commute, and every coefficient is a polynomial in a formal parameter `t`.

mod context;
mod derivation;
mod element;
mod monomial;
pub mod sample;
mod tpoly;

pub use context::{Context, Generator, Parity};
pub use derivation::Derivation;
pub use element::GradedElement;
pub use monomial::{Monomial, Negated};
pub use tpoly::TPoly;
