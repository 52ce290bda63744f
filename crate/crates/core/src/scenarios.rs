//! Named (algebra, subalgebra, polynomials) configurations.

use crate::error::Result;
use crate::invariants::InvariantPolynomial;
use crate::lie::{builtin, LieAlgebra, ReductiveSplit};
use crate::scalar::Coefficient;
use crate::weil::UniversalSetup;

pub struct Scenario<F> {
    pub name: &'static str,
    pub setup: UniversalSetup<F>,
    pub polynomials: Vec<InvariantPolynomial<F>>,
}

impl<F: Coefficient> Scenario<F> {
    pub fn new(
        name: &'static str,
        algebra: LieAlgebra<F>,
        split: ReductiveSplit,
        polynomials: Vec<InvariantPolynomial<F>>,
    ) -> Result<Self> {
        Ok(Self { name, setup: UniversalSetup::new(algebra, split)?, polynomials })
    }

    /// `so(n) ⊃ so(n-1)` with the normalized Pfaffian, `n` even.
    pub fn so_sphere(name: &'static str, n: usize) -> Result<Self> {
        let g = builtin::so::<F>(n)?;
        let split = ReductiveSplit::block(&g, n - 1)?;
        Self::new(name, g, split, vec![InvariantPolynomial::pfaffian(n)?])
    }

    pub fn paper_so4() -> Result<Self> {
        Self::so_sphere("paper-so4", 4)
    }

    pub fn paper_so6() -> Result<Self> {
        Self::so_sphere("paper-so6", 6)
    }

    /// `gl(3) ⊃ gl(2)` with the symmetrized traces of degree 2 and 3.
    pub fn paper_gl3() -> Result<Self> {
        let g = builtin::gl::<F>(3)?;
        let split = ReductiveSplit::block(&g, 2)?;
        let polys = vec![InvariantPolynomial::symmetrized_trace(&g, 2)?, InvariantPolynomial::symmetrized_trace(&g, 3)?];
        Self::new("paper-gl3", g, split, polys)
    }

    /// `su(2)` over the line spanned by `e3`, with the trace square.
    /// Requires the gaussian field.
    pub fn su2_line() -> Result<Self> {
        let g = builtin::su2::<F>()?;
        let split = ReductiveSplit::new(&g, &[2])?;
        let polys = vec![InvariantPolynomial::symmetrized_trace(&g, 2)?];
        Self::new("su2-line", g, split, polys)
    }
}
