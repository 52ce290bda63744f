//! Seeded random elements for property checks.

use std::sync::Arc;

use rand::Rng;

use super::context::Context;
use super::element::GradedElement;
use super::tpoly::TPoly;
use crate::scalar::Coefficient;

/// Shape of a random element.
#[derive(Clone, Copy, Debug)]
pub struct SampleShape {
    pub terms: usize,
    pub max_odd: usize,
    pub max_even: usize,
    /// Largest `t` power in a coefficient; `0` gives `t`-free elements.
    pub max_t_degree: usize,
}

impl Default for SampleShape {
    fn default() -> Self {
        Self { terms: 4, max_odd: 3, max_even: 2, max_t_degree: 0 }
    }
}

fn small_coefficient<F: Coefficient, R: Rng>(rng: &mut R) -> F {
    let mut num = rng.gen_range(-5i64..=5);
    if num == 0 {
        num = 1;
    }
    F::from_ratio(num, rng.gen_range(1i64..=4))
}

/// A random element with up to `shape.terms` terms of mixed degree.
pub fn random_element<F: Coefficient, R: Rng>(ctx: &Arc<Context>, rng: &mut R, shape: SampleShape) -> GradedElement<F> {
    let mut out = GradedElement::zero(ctx);
    for _ in 0..shape.terms {
        let n_odd = if ctx.n_odd() == 0 { 0 } else { rng.gen_range(0..=shape.max_odd.min(ctx.n_odd())) };
        let n_even = if ctx.n_even() == 0 { 0 } else { rng.gen_range(0..=shape.max_even) };
        let odd: Vec<u32> = (0..n_odd).map(|_| rng.gen_range(0..ctx.n_odd() as u32)).collect();
        let even: Vec<u32> = (0..n_even).map(|_| rng.gen_range(0..ctx.n_even() as u32)).collect();
        let coeffs = (0..=rng.gen_range(0..=shape.max_t_degree)).map(|_| small_coefficient(rng)).collect();
        let term = GradedElement::from_word(ctx, F::one(), &odd, &even).mul_tpoly(&TPoly::from_coeffs(coeffs));
        out = &out + &term;
    }
    out
}

/// A random element all of whose terms have form degree `degree`.
pub fn random_homogeneous<F: Coefficient, R: Rng>(
    ctx: &Arc<Context>,
    rng: &mut R,
    degree: usize,
    terms: usize,
) -> GradedElement<F> {
    let mut out = GradedElement::zero(ctx);
    for _ in 0..terms {
        let max_even = if ctx.n_even() == 0 { 0 } else { degree / 2 };
        let n_even = rng.gen_range(0..=max_even);
        let n_odd = degree - 2 * n_even;
        if n_odd > ctx.n_odd() {
            continue;
        }
        let odd: Vec<u32> = (0..n_odd).map(|_| rng.gen_range(0..ctx.n_odd() as u32)).collect();
        let even: Vec<u32> = (0..n_even).map(|_| rng.gen_range(0..ctx.n_even() as u32)).collect();
        out = &out + &GradedElement::from_word(ctx, small_coefficient(rng), &odd, &even);
    }
    out
}
