//! Dense polynomials in the deformation parameter `t`.

use std::fmt;

use crate::scalar::Coefficient;

/// `Σ c_j t^j`, stored densely with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TPoly<F> {
    coeffs: Vec<F>,
}

impl<F: Coefficient> TPoly<F> {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    /// `t`.
    pub fn t() -> Self {
        Self::from_coeffs(vec![F::zero(), F::one()])
    }

    /// `c · t^n`.
    pub fn monomial(c: F, n: usize) -> Self {
        let mut coeffs = vec![F::zero(); n + 1];
        coeffs[n] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `t`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), F::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a = a.add_ref(b);
        }
        self.trim();
    }

    pub fn sub_assign_ref(&mut self, other: &Self) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), F::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a = a.sub_ref(b);
        }
        self.trim();
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { coeffs: self.coeffs.iter().map(|a| a.mul_ref(c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.coeffs.len() == 1 {
            return self.scale(&other.coeffs[0]);
        }
        if self.coeffs.len() == 1 {
            return other.scale(&self.coeffs[0]);
        }
        let mut out = vec![F::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Self::from_coeffs(out)
    }

    pub fn pow(&self, n: usize) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Horner evaluation at `t = value`.
    pub fn eval(&self, value: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc.mul_ref(value).add_ref(c))
    }

    /// Exact `∫₀¹ p(t) dt = Σ c_j / (j+1)`.
    pub fn integrate_unit_interval(&self) -> F {
        self.coeffs
            .iter()
            .enumerate()
            .fold(F::zero(), |acc, (j, c)| acc.add_ref(&(c.clone() / F::from_i64(j as i64 + 1))))
    }

    /// Formal derivative `d/dt`.
    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c.mul_ref(&F::from_i64(j as i64)))
                .collect(),
        )
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }
}

impl<F: Coefficient> fmt::Display for TPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.coeffs.len() == 1 {
            return write!(f, "{}", self.coeffs[0].render());
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| match j {
                0 => c.render(),
                1 => format!("({})*t", c.render()),
                _ => format!("({})*t^{j}", c.render()),
            })
            .collect();
        write!(f, "({})", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn integrate_constant() {
        assert_eq!(TPoly::constant(q(1, 1)).integrate_unit_interval(), q(1, 1));
    }

    #[test]
    fn one_minus_t_squared() {
        // (1 - t^2)^m integrates to (2m)!!/(2m+1)!!
        let base = TPoly::from_coeffs(vec![q(1, 1), q(0, 1), q(-1, 1)]);
        let mut expected = q(1, 1);
        for m in 0..=8i64 {
            if m > 0 {
                expected *= q(2 * m, 2 * m + 1);
            }
            assert_eq!(base.pow(m as usize).integrate_unit_interval(), expected, "m = {m}");
        }
    }

    #[test]
    fn eval_and_derivative() {
        let p = TPoly::from_coeffs(vec![q(1, 1), q(-2, 1), q(3, 1)]);
        assert_eq!(p.eval(&q(2, 1)), q(9, 1));
        assert_eq!(p.derivative(), TPoly::from_coeffs(vec![q(-2, 1), q(6, 1)]));
        assert!(TPoly::<Rational>::constant(q(0, 1)).is_zero());
    }
}
