use crate::check::{CheckOutcome, CheckReport};
use crate::error::{Error, Result};
use crate::scalar::Coefficient;

use super::matrix::{Coordinates, SquareMatrix};

/// A finite-dimensional Lie algebra given by structure constants
/// `[e_b, e_c] = Σ_a c^a_{bc} e_a`, optionally with a matrix realization.
#[derive(Clone, Debug)]
pub struct LieAlgebra<F> {
    name: String,
    labels: Vec<String>,
    /// Dense `c[a][b][c]`.
    constants: Vec<F>,
    /// For each ordered pair `(b, c)`, the nonzero `(a, c^a_{bc})`.
    brackets: Vec<Vec<(usize, F)>>,
    matrices: Option<Vec<SquareMatrix<F>>>,
}

impl<F: Coefficient> LieAlgebra<F> {
    /// Builds and validates an algebra from `(a, b, c, c^a_{bc})` entries.
    /// Entries for the same index triple accumulate.
    pub fn from_entries(
        name: impl Into<String>,
        labels: Vec<String>,
        entries: impl IntoIterator<Item = (usize, usize, usize, F)>,
        matrices: Option<Vec<SquareMatrix<F>>>,
    ) -> Result<Self> {
        let algebra = Self::from_entries_unchecked(name, labels, entries, matrices)?;
        let report = algebra.validate();
        if let Some(bad) = report.failures().next() {
            return Err(Error::InvalidAlgebra(format!(
                "{} ({})",
                bad.name,
                bad.witness.as_deref().unwrap_or("")
            )));
        }
        Ok(algebra)
    }

    /// Like [`LieAlgebra::from_entries`] but skips validation. Only index
    /// ranges are checked. Used to build deliberately broken tables.
    pub fn from_entries_unchecked(
        name: impl Into<String>,
        labels: Vec<String>,
        entries: impl IntoIterator<Item = (usize, usize, usize, F)>,
        matrices: Option<Vec<SquareMatrix<F>>>,
    ) -> Result<Self> {
        let dim = labels.len();
        if dim == 0 {
            return Err(Error::InvalidAlgebra("dimension must be positive".into()));
        }
        if let Some(ms) = &matrices {
            if ms.len() != dim {
                return Err(Error::InvalidAlgebra(format!("{} matrices for dimension {dim}", ms.len())));
            }
            let n = ms[0].size();
            if ms.iter().any(|m| m.size() != n) {
                return Err(Error::InvalidAlgebra("matrices of different sizes".into()));
            }
        }
        let mut constants = vec![F::zero(); dim * dim * dim];
        for (a, b, c, v) in entries {
            if a >= dim || b >= dim || c >= dim {
                return Err(Error::OutOfRange(format!("structure constant index ({a},{b},{c}) for dimension {dim}")));
            }
            let slot = &mut constants[(a * dim + b) * dim + c];
            *slot = slot.add_ref(&v);
        }
        Ok(Self::assemble(name.into(), labels, constants, matrices))
    }

    /// Structure constants computed from matrix commutators of a basis.
    pub fn from_matrices(name: impl Into<String>, labels: Vec<String>, matrices: Vec<SquareMatrix<F>>) -> Result<Self> {
        let dim = matrices.len();
        if labels.len() != dim {
            return Err(Error::InvalidAlgebra("label count differs from basis size".into()));
        }
        let coords = Coordinates::new(&matrices)?;
        let mut entries = Vec::new();
        for b in 0..dim {
            for c in 0..dim {
                let comm = matrices[b].commutator(&matrices[c]);
                let x = coords
                    .decompose(&comm)
                    .ok_or_else(|| Error::InvalidAlgebra(format!("[{}, {}] leaves the span", labels[b], labels[c])))?;
                entries.extend(x.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(a, v)| (a, b, c, v)));
            }
        }
        Self::from_entries(name, labels, entries, Some(matrices))
    }

    fn assemble(name: String, labels: Vec<String>, constants: Vec<F>, matrices: Option<Vec<SquareMatrix<F>>>) -> Self {
        let dim = labels.len();
        let mut brackets = vec![Vec::new(); dim * dim];
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    let v = &constants[(a * dim + b) * dim + c];
                    if !v.is_zero() {
                        brackets[b * dim + c].push((a, v.clone()));
                    }
                }
            }
        }
        Self { name, labels, constants, brackets, matrices }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `c^a_{bc}`.
    pub fn constant(&self, a: usize, b: usize, c: usize) -> &F {
        let dim = self.dim();
        &self.constants[(a * dim + b) * dim + c]
    }

    /// Nonzero `(a, c^a_{bc})` for the pair `(b, c)`.
    pub fn bracket_of_basis(&self, b: usize, c: usize) -> &[(usize, F)] {
        &self.brackets[b * self.dim() + c]
    }

    /// All nonzero `(a, b, c, c^a_{bc})`, ordered by `(a, b, c)`.
    pub fn entries(&self) -> Vec<(usize, usize, usize, F)> {
        let dim = self.dim();
        let mut out = Vec::new();
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    let v = self.constant(a, b, c);
                    if !v.is_zero() {
                        out.push((a, b, c, v.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn matrices(&self) -> Option<&[SquareMatrix<F>]> {
        self.matrices.as_deref()
    }

    /// The same algebra with one structure constant shifted by `delta`
    /// (and its antisymmetric partner by `-delta`). Matrices are dropped.
    pub fn perturbed(&self, a: usize, b: usize, c: usize, delta: F) -> Self {
        let dim = self.dim();
        let mut constants = self.constants.clone();
        let i = (a * dim + b) * dim + c;
        constants[i] = constants[i].add_ref(&delta);
        if b != c {
            let j = (a * dim + c) * dim + b;
            constants[j] = constants[j].sub_ref(&delta);
        }
        Self::assemble(format!("{}~perturbed", self.name), self.labels.clone(), constants, None)
    }

    /// Exact check of antisymmetry, the Jacobi identity, and agreement with
    /// the matrix realization. Each failure quotes the first violating tuple.
    pub fn validate(&self) -> CheckReport {
        let dim = self.dim();
        let mut report = CheckReport::new();

        let antisym = itertools::iproduct!(0..dim, 0..dim, 0..dim).find(|&(a, b, c)| {
            !self.constant(a, b, c).add_ref(self.constant(a, c, b)).is_zero()
        });
        report.push(match antisym {
            None => CheckOutcome::pass("antisymmetry"),
            Some((a, b, c)) => CheckOutcome::fail("antisymmetry", format!("(a,b,c)=({a},{b},{c})")),
        });

        let jacobi = itertools::iproduct!(0..dim, 0..dim, 0..dim, 0..dim)
            .find(|&(a, b, c, d)| !self.jacobi_sum(a, b, c, d).is_zero());
        report.push(match jacobi {
            None => CheckOutcome::pass("jacobi"),
            Some((a, b, c, d)) => CheckOutcome::fail("jacobi", format!("(a,b,c,d)=({a},{b},{c},{d})")),
        });

        if let Some(ms) = &self.matrices {
            let mismatch = itertools::iproduct!(0..dim, 0..dim).find(|&(b, c)| {
                let comm = ms[b].commutator(&ms[c]);
                let rebuilt = (0..dim).fold(SquareMatrix::zeros(comm.size()), |acc, a| {
                    acc.add(&ms[a].scale(self.constant(a, b, c)))
                });
                rebuilt != comm
            });
            report.push(match mismatch {
                None => CheckOutcome::pass("matrix-commutators"),
                Some((b, c)) => CheckOutcome::fail("matrix-commutators", format!("(b,c)=({b},{c})")),
            });
        }
        report
    }

    /// `Σ_e c^e_{bc} c^a_{ed} + c^e_{cd} c^a_{eb} + c^e_{db} c^a_{ec}`.
    fn jacobi_sum(&self, a: usize, b: usize, c: usize, d: usize) -> F {
        let mut sum = F::zero();
        for (x, y, z) in [(b, c, d), (c, d, b), (d, b, c)] {
            for (e, v) in self.bracket_of_basis(x, y) {
                let w = self.constant(a, *e, z);
                if !w.is_zero() {
                    sum = sum.add_ref(&v.mul_ref(w));
                }
            }
        }
        sum
    }
}
