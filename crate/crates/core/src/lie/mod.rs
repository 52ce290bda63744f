//! Lie algebras as structure-constant tables, reductive splittings, and the
//! bracket of Lie-algebra-valued forms.

mod algebra;
pub mod builtin;
mod file;
mod form;
mod matrix;
mod split;

pub use algebra::LieAlgebra;
pub use file::AlgebraFile;
pub use form::LieValuedForm;
pub use matrix::SquareMatrix;
pub use split::ReductiveSplit;
