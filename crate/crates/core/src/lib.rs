//! Exact transgression forms for characteristic classes in associated bundles.
//!
//! All computations happen in the universal model: the free graded-commutative
//! algebra on connection generators `w[a]` (degree 1) and curvature
//! generators `W[a]` (degree 2), with the differential fixed by the structure
//! equation. An identity that holds there holds for every connection on every
//! principal bundle, and here it is checked by comparing canonical forms.
//!
//! The crate is generic over an exact coefficient field; see [`Rational`] and
//! [`Gaussian`].

pub mod algebra;
pub mod check;
pub mod error;
pub mod invariants;
pub mod lie;
pub mod scalar;
pub mod scenarios;
pub mod transgression;
pub mod weil;

pub use error::{Error, Result};
pub use scalar::{Coefficient, Gaussian, Rational, Scalar};

pub type RationalElement = algebra::GradedElement<Rational>;
pub type GaussianElement = algebra::GradedElement<Gaussian>;
pub type RationalAlgebra = lie::LieAlgebra<Rational>;
pub type GaussianAlgebra = lie::LieAlgebra<Gaussian>;
pub type RationalSetup = weil::UniversalSetup<Rational>;
pub type GaussianSetup = weil::UniversalSetup<Gaussian>;
pub type RationalPolynomial = invariants::InvariantPolynomial<Rational>;
pub type GaussianPolynomial = invariants::InvariantPolynomial<Gaussian>;
