use crate::check::{CheckOutcome, CheckReport};
use crate::error::{Error, Result};
use crate::scalar::Coefficient;

use super::algebra::LieAlgebra;

/// A validated decomposition `g = h + p` of an adapted basis, with `h` a
/// subalgebra and `[h, p] ⊆ p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductiveSplit {
    dim: usize,
    h: Vec<usize>,
    p: Vec<usize>,
    in_h: Vec<bool>,
}

impl ReductiveSplit {
    pub fn new<F: Coefficient>(algebra: &LieAlgebra<F>, h_indices: &[usize]) -> Result<Self> {
        let report = Self::validate(algebra, h_indices);
        if let Some(bad) = report.failures().next() {
            return Err(Error::InvalidSplit(format!("{} ({})", bad.name, bad.witness.as_deref().unwrap_or(""))));
        }
        Ok(Self::from_indices(algebra.dim(), h_indices))
    }

    /// `h = 0`; `ψ` and `Ψ` vanish and the construction reduces to the
    /// ordinary Chern–Simons transgression.
    pub fn trivial<F: Coefficient>(algebra: &LieAlgebra<F>) -> Self {
        Self::from_indices(algebra.dim(), &[])
    }

    /// `h` spanned by the basis elements whose matrices live in the leading
    /// `m × m` block, e.g. `so(m) ⊂ so(n)` or `gl(m) ⊂ gl(n)`.
    pub fn block<F: Coefficient>(algebra: &LieAlgebra<F>, m: usize) -> Result<Self> {
        let ms = algebra.matrices().ok_or(Error::MissingMatrices)?;
        let h: Vec<usize> = (0..algebra.dim()).filter(|&a| ms[a].supported_in_block(m)).collect();
        Self::new(algebra, &h)
    }

    fn from_indices(dim: usize, h_indices: &[usize]) -> Self {
        let mut in_h = vec![false; dim];
        for &a in h_indices {
            in_h[a] = true;
        }
        let h = (0..dim).filter(|&a| in_h[a]).collect();
        let p = (0..dim).filter(|&a| !in_h[a]).collect();
        Self { dim, h, p, in_h }
    }

    /// Report on index sanity, the subalgebra condition, and `[h, p] ⊆ p`.
    pub fn validate<F: Coefficient>(algebra: &LieAlgebra<F>, h_indices: &[usize]) -> CheckReport {
        let dim = algebra.dim();
        let mut report = CheckReport::new();
        let mut seen = vec![false; dim];
        let mut bad_index = None;
        for &a in h_indices {
            if a >= dim || seen[a] {
                bad_index = Some(a);
                break;
            }
            seen[a] = true;
        }
        if let Some(a) = bad_index {
            report.push(CheckOutcome::fail("h-indices", format!("index {a} out of range or repeated")));
            return report;
        }
        report.push(CheckOutcome::pass("h-indices"));
        let in_h = seen;
        let find = |want_c_in_h: bool, want_a_in_h: bool| {
            h_indices.iter().find_map(|&b| {
                (0..dim).filter(|&c| in_h[c] == want_c_in_h).find_map(|c| {
                    algebra
                        .bracket_of_basis(b, c)
                        .iter()
                        .find(|(a, _)| in_h[*a] == want_a_in_h)
                        .map(|(a, _)| (*a, b, c))
                })
            })
        };
        report.push(match find(true, false) {
            None => CheckOutcome::pass("subalgebra"),
            Some((a, b, c)) => CheckOutcome::fail("subalgebra", format!("c^{a}_({b},{c}) != 0 with a in p")),
        });
        report.push(match find(false, true) {
            None => CheckOutcome::pass("reductive"),
            Some((a, b, c)) => CheckOutcome::fail("reductive", format!("c^{a}_({b},{c}) != 0 with a in h")),
        });
        report
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn h_indices(&self) -> &[usize] {
        &self.h
    }

    pub fn p_indices(&self) -> &[usize] {
        &self.p
    }

    pub fn in_h(&self, a: usize) -> bool {
        self.in_h[a]
    }
}
