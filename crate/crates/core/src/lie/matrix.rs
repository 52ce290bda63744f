use crate::error::{Error, Result};
use crate::scalar::Coefficient;

/// A small dense square matrix over an exact field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareMatrix<F> {
    n: usize,
    data: Vec<F>,
}

impl<F: Coefficient> SquareMatrix<F> {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![F::zero(); n * n] }
    }

    /// `E_ij`, the matrix unit.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n);
        m.set(i, j, F::one());
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Parse("matrix is not square".into()));
        }
        Ok(Self { n, data: rows.into_iter().flatten().collect() })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<F>> {
        self.data.chunks(self.n).map(<[F]>::to_vec).collect()
    }

    pub fn scale(&self, c: &F) -> Self {
        Self { n: self.n, data: self.data.iter().map(|x| x.mul_ref(c)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| a.add_ref(b)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| a.sub_ref(b)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * n + j] = out.data[i * n + j].add_ref(&a.mul_ref(b));
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn trace(&self) -> F {
        (0..self.n).fold(F::zero(), |acc, i| acc.add_ref(self.get(i, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// True when every nonzero entry lies in the leading `m × m` block.
    pub fn supported_in_block(&self, m: usize) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| (i < m && j < m) || self.get(i, j).is_zero()))
    }
}

/// Exact coordinates with respect to a linearly independent family of matrices.
#[derive(Clone, Debug)]
pub(crate) struct Coordinates<F> {
    /// Reduced rows: `(pivot column, combination of basis elements)`.
    pivots: Vec<(usize, Vec<F>)>,
    basis: Vec<SquareMatrix<F>>,
}

impl<F: Coefficient> Coordinates<F> {
    pub fn new(basis: &[SquareMatrix<F>]) -> Result<Self> {
        let dim = basis.len();
        let width = basis.first().map_or(0, |m| m.data.len());
        // row-reduce [B | I]
        let mut rows: Vec<(Vec<F>, Vec<F>)> = basis
            .iter()
            .enumerate()
            .map(|(i, m)| {
                let mut id = vec![F::zero(); dim];
                id[i] = F::one();
                (m.data.clone(), id)
            })
            .collect();
        let mut pivots = Vec::with_capacity(dim);
        let mut next = 0;
        for col in 0..width {
            let Some(r) = (next..dim).find(|&r| !rows[r].0[col].is_zero()) else { continue };
            rows.swap(next, r);
            let inv = F::one() / rows[next].0[col].clone();
            let (v, c) = &mut rows[next];
            v.iter_mut().for_each(|x| *x = x.mul_ref(&inv));
            c.iter_mut().for_each(|x| *x = x.mul_ref(&inv));
            for r in 0..dim {
                if r == next || rows[r].0[col].is_zero() {
                    continue;
                }
                let factor = rows[r].0[col].clone();
                let (pv, pc) = rows[next].clone();
                let (v, c) = &mut rows[r];
                for (x, p) in v.iter_mut().zip(&pv) {
                    *x = x.sub_ref(&p.mul_ref(&factor));
                }
                for (x, p) in c.iter_mut().zip(&pc) {
                    *x = x.sub_ref(&p.mul_ref(&factor));
                }
            }
            pivots.push(col);
            next += 1;
            if next == dim {
                break;
            }
        }
        if next < dim {
            return Err(Error::InvalidAlgebra("basis matrices are linearly dependent".into()));
        }
        let pivots = pivots.into_iter().zip(rows).map(|(p, (_, c))| (p, c)).collect();
        Ok(Self { pivots, basis: basis.to_vec() })
    }

    /// Coordinates of `m`, or `None` if `m` is outside the span.
    pub fn decompose(&self, m: &SquareMatrix<F>) -> Option<Vec<F>> {
        let dim = self.basis.len();
        let mut x = vec![F::zero(); dim];
        for (col, combo) in &self.pivots {
            let v = &m.data[*col];
            if v.is_zero() {
                continue;
            }
            for (xi, ci) in x.iter_mut().zip(combo) {
                *xi = xi.add_ref(&ci.mul_ref(v));
            }
        }
        let mut rebuilt = SquareMatrix::zeros(m.n);
        for (xi, b) in x.iter().zip(&self.basis) {
            if !xi.is_zero() {
                rebuilt = rebuilt.add(&b.scale(xi));
            }
        }
        (rebuilt == *m).then_some(x)
    }
}
