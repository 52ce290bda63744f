use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::context::{Context, Generator};
use super::monomial::Monomial;
use super::tpoly::TPoly;
use crate::error::{Error, Result};
use crate::scalar::{render_two_pi, Coefficient, Scalar};

/// A sparse element of the free graded-commutative algebra over a
/// [`Context`], with coefficients that are polynomials in `t`.
///
/// The whole element carries one formal `(2π)^-k` unit. Zero coefficients are
/// never stored, so equality is a comparison of canonical term maps.
#[derive(Clone, Debug)]
pub struct GradedElement<F> {
    ctx: Arc<Context>,
    two_pi: i32,
    terms: BTreeMap<Monomial, TPoly<F>>,
}

impl<F: Coefficient> GradedElement<F> {
    pub fn zero(ctx: &Arc<Context>) -> Self {
        Self { ctx: ctx.clone(), two_pi: 0, terms: BTreeMap::new() }
    }

    pub fn one(ctx: &Arc<Context>) -> Self {
        Self::constant(ctx, F::one())
    }

    pub fn constant(ctx: &Arc<Context>, c: F) -> Self {
        Self::term(ctx, Monomial::one(), TPoly::constant(c))
    }

    pub fn scalar(ctx: &Arc<Context>, s: &Scalar<F>) -> Self {
        let mut e = Self::constant(ctx, s.value.clone());
        e.two_pi = s.two_pi_exponent;
        e
    }

    /// The parameter `t` as an element of degree zero.
    pub fn t(ctx: &Arc<Context>) -> Self {
        Self::term(ctx, Monomial::one(), TPoly::t())
    }

    pub fn generator(ctx: &Arc<Context>, g: Generator) -> Self {
        assert!(ctx.contains(g), "generator {g} outside its context");
        Self::term(ctx, Monomial::generator(g), TPoly::one())
    }

    pub fn term(ctx: &Arc<Context>, m: Monomial, coeff: TPoly<F>) -> Self {
        let mut e = Self::zero(ctx);
        e.add_term(m, &coeff);
        e
    }

    /// Builds `c · w` from an unsorted word of odd generator ids and a list of
    /// even ids, recording the reordering sign.
    pub fn from_word(ctx: &Arc<Context>, c: F, odd_word: &[u32], even: &[u32]) -> Self {
        match Monomial::from_word(odd_word, even) {
            None => Self::zero(ctx),
            Some((negated, m)) => Self::term(ctx, m, TPoly::constant(if negated { -c } else { c })),
        }
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn two_pi_exponent(&self) -> i32 {
        self.two_pi
    }

    pub fn with_two_pi_exponent(mut self, exponent: i32) -> Self {
        self.two_pi = exponent;
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &TPoly<F>)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&TPoly<F>> {
        self.terms.get(m)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// The common form degree of all terms, if the element is homogeneous.
    /// The zero element is homogeneous of every degree and reports `None`.
    pub fn degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, degree: usize) -> bool {
        self.terms.keys().all(|m| m.degree() == degree)
    }

    pub fn is_t_free(&self) -> bool {
        self.terms.values().all(|p| p.degree() == Some(0))
    }

    pub(crate) fn add_term(&mut self, m: Monomial, coeff: &TPoly<F>) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(coeff.clone());
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(coeff);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub(crate) fn sub_term(&mut self, m: Monomial, coeff: &TPoly<F>) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(coeff.neg());
            }
            Entry::Occupied(mut o) => {
                o.get_mut().sub_assign_ref(coeff);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if !Context::same(&self.ctx, &other.ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    fn sum_unit(&self, other: &Self) -> Result<i32> {
        self.check_compatible(other)?;
        if self.is_zero() {
            return Ok(other.two_pi);
        }
        if other.is_zero() || self.two_pi == other.two_pi {
            return Ok(self.two_pi);
        }
        Err(Error::UnitMismatch { left: self.two_pi, right: other.two_pi })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let two_pi = self.sum_unit(other)?;
        let mut out = self.clone();
        out.two_pi = two_pi;
        for (m, p) in &other.terms {
            out.add_term(m.clone(), p);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let two_pi = self.sum_unit(other)?;
        let mut out = self.clone();
        out.two_pi = two_pi;
        for (m, p) in &other.terms {
            out.sub_term(m.clone(), p);
        }
        Ok(out)
    }

    /// The wedge product.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(&self.ctx);
        out.two_pi = self.two_pi + other.two_pi;
        for (ma, pa) in &self.terms {
            for (mb, pb) in &other.terms {
                if let Some((negated, m)) = ma.mul(mb) {
                    let p = pa.mul(pb);
                    if negated {
                        out.sub_term(m, &p);
                    } else {
                        out.add_term(m, &p);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        self.mul_tpoly(&TPoly::constant(c.clone()))
    }

    pub fn scale_scalar(&self, s: &Scalar<F>) -> Self {
        let mut out = self.scale(&s.value);
        out.two_pi += s.two_pi_exponent;
        out
    }

    pub fn mul_tpoly(&self, p: &TPoly<F>) -> Self {
        let mut out = Self::zero(&self.ctx);
        out.two_pi = self.two_pi;
        for (m, q) in &self.terms {
            out.add_term(m.clone(), &q.mul(p));
        }
        out
    }

    /// Replaces each coefficient `p(t)` by `∫₀¹ p(t) dt`.
    pub fn integrate_unit_interval(&self) -> Self {
        self.map_coefficients(|p| TPoly::constant(p.integrate_unit_interval()))
    }

    /// Evaluates every coefficient at `t = value`.
    pub fn substitute_t(&self, value: &F) -> Self {
        self.map_coefficients(|p| TPoly::constant(p.eval(value)))
    }

    /// Formal `d/dt` of every coefficient.
    pub fn t_derivative(&self) -> Self {
        self.map_coefficients(TPoly::derivative)
    }

    fn map_coefficients(&self, f: impl Fn(&TPoly<F>) -> TPoly<F>) -> Self {
        let mut out = Self::zero(&self.ctx);
        out.two_pi = self.two_pi;
        for (m, p) in &self.terms {
            out.add_term(m.clone(), &f(p));
        }
        out
    }

    /// Terms as `(coefficient, monomial)` strings in canonical order.
    pub fn render_terms(&self) -> Vec<(String, String)> {
        self.terms
            .iter()
            .map(|(m, p)| {
                let mut c = p.to_string();
                if self.two_pi != 0 {
                    c = format!("{c}*{}", render_two_pi(self.two_pi));
                }
                (c, m.render(&self.ctx))
            })
            .collect()
    }
}

impl<F: Coefficient> PartialEq for GradedElement<F> {
    fn eq(&self, other: &Self) -> bool {
        if !Context::same(&self.ctx, &other.ctx) {
            return false;
        }
        if self.is_zero() && other.is_zero() {
            return true;
        }
        self.two_pi == other.two_pi && self.terms == other.terms
    }
}

impl<F: Coefficient> Eq for GradedElement<F> {}

impl<F: Coefficient> fmt::Display for GradedElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .render_terms()
            .into_iter()
            .map(|(c, m)| if m == "1" { c } else { format!("{c}*{m}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<F: Coefficient> $tr<&GradedElement<F>> for &GradedElement<F> {
            type Output = GradedElement<F>;

            /// Panics on mismatched contexts or `(2π)` units; use the
            /// `checked_*` form to get an error instead.
            fn $method(self, rhs: &GradedElement<F>) -> GradedElement<F> {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }

        impl<F: Coefficient> $tr for GradedElement<F> {
            type Output = GradedElement<F>;

            fn $method(self, rhs: GradedElement<F>) -> GradedElement<F> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl<F: Coefficient> Neg for &GradedElement<F> {
    type Output = GradedElement<F>;

    fn neg(self) -> GradedElement<F> {
        self.map_coefficients(TPoly::neg)
    }
}

impl<F: Coefficient> Neg for GradedElement<F> {
    type Output = GradedElement<F>;

    fn neg(self) -> GradedElement<F> {
        -&self
    }
}
