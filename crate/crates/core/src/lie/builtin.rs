//! The shipped matrix Lie algebras. Structure constants are always derived
//! from matrix commutators, so each realization is its own oracle.

use crate::error::{Error, Result};
use crate::scalar::Coefficient;

use super::algebra::LieAlgebra;
use super::matrix::SquareMatrix;

/// Position of `E_ij - E_ji` (`i < j`) in the basis of `so(n)`.
pub fn so_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    // pairs (0,1),(0,2),...,(0,n-1),(1,2),...
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// `so(n)` with basis `E_ij - E_ji`, `i < j`, in lexicographic order.
pub fn so<F: Coefficient>(n: usize) -> Result<LieAlgebra<F>> {
    if n < 2 {
        return Err(Error::Unsupported(format!("so({n}) is zero-dimensional")));
    }
    let mut labels = Vec::new();
    let mut matrices = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            labels.push(format!("e({},{})", i + 1, j + 1));
            matrices.push(SquareMatrix::unit(n, i, j).sub(&SquareMatrix::unit(n, j, i)));
        }
    }
    LieAlgebra::from_matrices(format!("so({n})"), labels, matrices)
}

/// `gl(n)` with the matrix units `E_ij` in row-major order.
pub fn gl<F: Coefficient>(n: usize) -> Result<LieAlgebra<F>> {
    if n < 1 {
        return Err(Error::Unsupported("gl(0)".into()));
    }
    let mut labels = Vec::new();
    let mut matrices = Vec::new();
    for i in 0..n {
        for j in 0..n {
            labels.push(format!("E({},{})", i + 1, j + 1));
            matrices.push(SquareMatrix::unit(n, i, j));
        }
    }
    LieAlgebra::from_matrices(format!("gl({n})"), labels, matrices)
}

fn imaginary_unit<F: Coefficient>(what: &str) -> Result<F> {
    F::imaginary_unit().ok_or_else(|| Error::Unsupported(format!("{what} needs the gaussian field")))
}

/// `u(n)`: basis `i·E_jj`, then for each `j < k` the pair
/// `E_jk - E_kj`, `i·(E_jk + E_kj)`.
pub fn u<F: Coefficient>(n: usize) -> Result<LieAlgebra<F>> {
    let i = imaginary_unit::<F>("u(n)")?;
    let mut labels = Vec::new();
    let mut matrices = Vec::new();
    for j in 0..n {
        labels.push(format!("iE({},{})", j + 1, j + 1));
        matrices.push(SquareMatrix::unit(n, j, j).scale(&i));
    }
    for j in 0..n {
        for k in j + 1..n {
            labels.push(format!("A({},{})", j + 1, k + 1));
            matrices.push(SquareMatrix::unit(n, j, k).sub(&SquareMatrix::unit(n, k, j)));
            labels.push(format!("S({},{})", j + 1, k + 1));
            matrices.push(SquareMatrix::unit(n, j, k).add(&SquareMatrix::unit(n, k, j)).scale(&i));
        }
    }
    LieAlgebra::from_matrices(format!("u({n})"), labels, matrices)
}

/// `su(2)` with `e_k = -(i/2) σ_k`, so that `[e_1, e_2] = e_3` cyclically.
pub fn su2<F: Coefficient>() -> Result<LieAlgebra<F>> {
    let i = imaginary_unit::<F>("su(2)")?;
    let z = F::zero();
    let one = F::one();
    let sigma = [
        SquareMatrix::from_rows(vec![vec![z.clone(), one.clone()], vec![one.clone(), z.clone()]])?,
        SquareMatrix::from_rows(vec![vec![z.clone(), -i.clone()], vec![i.clone(), z.clone()]])?,
        SquareMatrix::from_rows(vec![vec![one.clone(), z.clone()], vec![z, -one]])?,
    ];
    let factor = -(i * F::from_ratio(1, 2));
    let matrices = sigma.iter().map(|s| s.scale(&factor)).collect();
    LieAlgebra::from_matrices("su(2)", vec!["e1".into(), "e2".into(), "e3".into()], matrices)
}

/// The abelian algebra `R^d`, realized by diagonal matrix units.
pub fn abelian<F: Coefficient>(d: usize) -> Result<LieAlgebra<F>> {
    if d == 0 {
        return Err(Error::Unsupported("abelian algebra of dimension 0".into()));
    }
    let labels = (0..d).map(|a| format!("x{}", a + 1)).collect();
    let matrices = (0..d).map(|a| SquareMatrix::unit(d, a, a)).collect();
    LieAlgebra::from_matrices(format!("R^{d}"), labels, matrices)
}
