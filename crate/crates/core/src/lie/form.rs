use std::sync::Arc;

use crate::algebra::{Context, GradedElement, TPoly};
use crate::error::{Error, Result};
use crate::scalar::Coefficient;

use super::algebra::LieAlgebra;
use super::split::ReductiveSplit;

/// A Lie-algebra-valued form: one homogeneous component per basis index.
#[derive(Clone, Debug)]
pub struct LieValuedForm<F> {
    components: Vec<GradedElement<F>>,
    degree: usize,
}

impl<F: Coefficient> PartialEq for LieValuedForm<F> {
    fn eq(&self, other: &Self) -> bool {
        self.components == other.components && (self.degree == other.degree || self.is_zero())
    }
}

impl<F: Coefficient> Eq for LieValuedForm<F> {}

impl<F: Coefficient> LieValuedForm<F> {
    pub fn new(components: Vec<GradedElement<F>>, degree: usize) -> Result<Self> {
        if let Some(a) = components.iter().position(|c| !c.is_homogeneous_of(degree)) {
            return Err(Error::Unsupported(format!("component {a} is not homogeneous of degree {degree}")));
        }
        Ok(Self { components, degree })
    }

    pub fn zero(ctx: &Arc<Context>, dim: usize, degree: usize) -> Self {
        Self { components: vec![GradedElement::zero(ctx); dim], degree }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn component(&self, a: usize) -> &GradedElement<F> {
        &self.components[a]
    }

    pub fn components(&self) -> &[GradedElement<F>] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(GradedElement::is_zero)
    }

    /// Indices of the nonzero components.
    pub fn support(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&a| !self.components[a].is_zero()).collect()
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&GradedElement<F>, &GradedElement<F>) -> GradedElement<F>) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::AlgebraMismatch);
        }
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::Unsupported(format!("adding forms of degree {} and {}", self.degree, other.degree)));
        }
        let degree = if self.is_zero() { other.degree } else { self.degree };
        let components = self.components.iter().zip(&other.components).map(|(a, b)| f(a, b)).collect();
        Ok(Self { components, degree })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.checked_add(other).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.checked_sub(other).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|x| x.scale(c))
    }

    pub fn mul_tpoly(&self, p: &TPoly<F>) -> Self {
        self.map(|x| x.mul_tpoly(p))
    }

    pub fn substitute_t(&self, value: &F) -> Self {
        self.map(|x| x.substitute_t(value))
    }

    /// Componentwise map preserving the declared degree.
    pub fn map(&self, f: impl Fn(&GradedElement<F>) -> GradedElement<F>) -> Self {
        Self { components: self.components.iter().map(f).collect(), degree: self.degree }
    }

    /// Componentwise map with a degree shift, e.g. an exterior derivative.
    pub fn map_with_degree(&self, degree: usize, f: impl Fn(&GradedElement<F>) -> GradedElement<F>) -> Self {
        Self { components: self.components.iter().map(f).collect(), degree }
    }

    /// `(h-part, p-part)`; each zeroes the complementary components.
    pub fn project(&self, split: &ReductiveSplit) -> Result<(Self, Self)> {
        if split.dim() != self.dim() {
            return Err(Error::AlgebraMismatch);
        }
        let keep = |want_h: bool| Self {
            components: self
                .components
                .iter()
                .enumerate()
                .map(|(a, x)| if split.in_h(a) == want_h { x.clone() } else { GradedElement::zero(x.context()) })
                .collect(),
            degree: self.degree,
        };
        Ok((keep(true), keep(false)))
    }
}

impl<F: Coefficient> LieAlgebra<F> {
    /// `[x, y]^a = Σ_{b,c} c^a_{bc} x^b ∧ y^c`.
    pub fn bracket(&self, x: &LieValuedForm<F>, y: &LieValuedForm<F>) -> Result<LieValuedForm<F>> {
        let dim = self.dim();
        if x.dim() != dim || y.dim() != dim {
            return Err(Error::AlgebraMismatch);
        }
        let ctx = match x.components.first() {
            Some(c) => c.context().clone(),
            None => return Err(Error::AlgebraMismatch),
        };
        let mut out = LieValuedForm::zero(&ctx, dim, x.degree + y.degree);
        for b in x.support() {
            for c in y.support() {
                let entries = self.bracket_of_basis(b, c);
                if entries.is_empty() {
                    continue;
                }
                let prod = x.components[b].checked_mul(&y.components[c])?;
                if prod.is_zero() {
                    continue;
                }
                for (a, v) in entries {
                    out.components[*a] = &out.components[*a] + &prod.scale(v);
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Generator;
    use crate::lie::builtin;
    use crate::scalar::Rational;

    type E = GradedElement<Rational>;

    #[test]
    fn abelian_bracket_vanishes() {
        let g = builtin::abelian::<Rational>(2).unwrap();
        let ctx = Context::with_counts(2, 0);
        let x = LieValuedForm::new(vec![E::generator(&ctx, Generator::odd(0)), E::generator(&ctx, Generator::odd(1))], 1).unwrap();
        assert!(g.bracket(&x, &x).unwrap().is_zero());
    }

    #[test]
    fn so3_bracket_component() {
        let g = builtin::so::<Rational>(3).unwrap();
        let ctx = Context::with_counts(2, 0);
        let u = E::generator(&ctx, Generator::odd(0));
        let v = E::generator(&ctx, Generator::odd(1));
        let zero = E::zero(&ctx);
        // x = e(1,2)·u, y = e(1,3)·v; [e12, e13] = -e23
        let x = LieValuedForm::new(vec![u.clone(), zero.clone(), zero.clone()], 1).unwrap();
        let y = LieValuedForm::new(vec![zero.clone(), v.clone(), zero.clone()], 1).unwrap();
        let z = g.bracket(&x, &y).unwrap();
        assert_eq!(z.component(2), &-(&u * &v));
        assert!(z.component(0).is_zero() && z.component(1).is_zero());
        assert_eq!(z.degree(), 2);
    }

    #[test]
    fn projection_identity() {
        let g = builtin::so::<Rational>(4).unwrap();
        let split = ReductiveSplit::block(&g, 3).unwrap();
        let ctx = Context::with_counts(6, 0);
        let w = LieValuedForm::new((0..6).map(|a| E::generator(&ctx, Generator::odd(a))).collect(), 1).unwrap();
        let (h, p) = w.project(&split).unwrap();
        assert_eq!(h.support(), vec![0, 1, 3]);
        assert_eq!(p.support(), vec![2, 4, 5]);
        assert_eq!(h.add(&p), w);
        let (hh, hp) = h.project(&split).unwrap();
        assert_eq!(hh, h);
        assert!(hp.is_zero());
    }
}
