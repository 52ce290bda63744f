use std::sync::Arc;

use super::context::{Context, Generator, Parity};
use super::element::GradedElement;
use super::monomial::Monomial;
use super::tpoly::TPoly;
use crate::error::{Error, Result};
use crate::scalar::Coefficient;

/// An odd graded derivation, determined by its values on generators.
///
/// `D(ab) = D(a) b + (-1)^{|a|} a D(b)` for homogeneous `a`; the degree is
/// `+1` (like `d`) or `-1` (like an interior product).
#[derive(Clone, Debug)]
pub struct Derivation<F> {
    ctx: Arc<Context>,
    degree: i32,
    odd_images: Vec<GradedElement<F>>,
    even_images: Vec<GradedElement<F>>,
}

impl<F: Coefficient> Derivation<F> {
    pub fn new(
        ctx: &Arc<Context>,
        degree: i32,
        mut image: impl FnMut(Generator) -> GradedElement<F>,
    ) -> Result<Self> {
        assert!(degree == 1 || degree == -1, "derivation degree must be +1 or -1");
        let mut build = |g: Generator| -> Result<GradedElement<F>> {
            let img = image(g);
            if !Context::same(img.context(), ctx) {
                return Err(Error::ContextMismatch);
            }
            let expected = (g.parity.form_degree() as i32 + degree) as usize;
            if !img.is_homogeneous_of(expected) {
                return Err(Error::NonHomogeneousImage { generator: ctx.label(g).to_string(), expected });
            }
            Ok(img)
        };
        let odd_images = (0..ctx.n_odd() as u32).map(|i| build(Generator::odd(i))).collect::<Result<_>>()?;
        let even_images = (0..ctx.n_even() as u32).map(|i| build(Generator::even(i))).collect::<Result<_>>()?;
        Ok(Self { ctx: ctx.clone(), degree, odd_images, even_images })
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn image(&self, g: Generator) -> &GradedElement<F> {
        match g.parity {
            Parity::Odd => &self.odd_images[g.id as usize],
            Parity::Even => &self.even_images[g.id as usize],
        }
    }

    /// Panics on a context mismatch; see [`Derivation::checked_apply`].
    pub fn apply(&self, x: &GradedElement<F>) -> GradedElement<F> {
        self.checked_apply(x).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn checked_apply(&self, x: &GradedElement<F>) -> Result<GradedElement<F>> {
        if !Context::same(x.context(), &self.ctx) {
            return Err(Error::ContextMismatch);
        }
        let mut out = GradedElement::zero(&self.ctx).with_two_pi_exponent(x.two_pi_exponent());
        for (m, p) in x.terms() {
            let r = m.odd().len();
            for (i, &id) in m.odd().iter().enumerate() {
                let img = &self.odd_images[id as usize];
                if img.is_zero() {
                    continue;
                }
                let left = m.odd_prefix(i);
                let right = m.odd_suffix_with_even(i + 1);
                sandwich(&left, img, &right, p, i % 2 == 1, &mut out);
            }
            let left = m.odd_only();
            for (j, &id) in m.even().iter().enumerate() {
                let img = &self.even_images[id as usize];
                if img.is_zero() {
                    continue;
                }
                let rest = m.without_odd_all().without_even(j);
                sandwich(&left, img, &rest, p, r % 2 == 1, &mut out);
            }
        }
        Ok(out)
    }

    /// The graded commutator `[D1, D2] = D1 D2 + D2 D1` of two odd derivations,
    /// applied to `x`.
    pub fn anticommutator(&self, other: &Self, x: &GradedElement<F>) -> GradedElement<F> {
        &self.apply(&other.apply(x)) + &other.apply(&self.apply(x))
    }
}

/// `out += ± p · left · img · right`.
fn sandwich<F: Coefficient>(
    left: &Monomial,
    img: &GradedElement<F>,
    right: &Monomial,
    p: &TPoly<F>,
    negate: bool,
    out: &mut GradedElement<F>,
) {
    for (u, q) in img.terms() {
        let Some((n1, lu)) = left.mul(u) else { continue };
        let Some((n2, m)) = lu.mul(right) else { continue };
        let coeff = p.mul(q);
        if negate ^ n1 ^ n2 {
            out.sub_term(m, &coeff);
        } else {
            out.add_term(m, &coeff);
        }
    }
}

impl Monomial {
    fn without_odd_all(&self) -> Monomial {
        self.odd_suffix_with_even(self.odd().len())
    }
}
