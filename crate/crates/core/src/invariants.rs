//! Invariant polynomials stored in polarized form: a symmetric multilinear
//! map on the Lie algebra, recorded by its values on sorted basis tuples.

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::algebra::GradedElement;
use crate::check::CheckOutcome;
use crate::error::{Error, Result};
use crate::lie::builtin::so_index;
use crate::lie::{LieAlgebra, LieValuedForm};
use crate::scalar::{Coefficient, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantPolynomial<F> {
    name: String,
    dim: usize,
    degree: usize,
    values: BTreeMap<Vec<usize>, F>,
    prefactor: Scalar<F>,
}

/// Steps `v` to the next lexicographic permutation; `false` after the last.
/// Repeated entries yield each distinct arrangement once.
fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot has a successor");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn distinct_orderings(sorted: &[usize]) -> Vec<Vec<usize>> {
    let mut cur = sorted.to_vec();
    let mut out = vec![cur.clone()];
    while next_permutation(&mut cur) {
        out.push(cur.clone());
    }
    out
}

fn permutation_is_odd(perm: &[usize]) -> bool {
    let inversions = (0..perm.len())
        .flat_map(|i| (i + 1..perm.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| perm[i] > perm[j])
        .count();
    inversions % 2 == 1
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

impl<F: Coefficient> InvariantPolynomial<F> {
    /// Builds a polynomial from values on basis tuples. Tuples are sorted on
    /// the way in; two entries for the same sorted tuple must agree.
    pub fn from_values(
        name: impl Into<String>,
        dim: usize,
        degree: usize,
        values: impl IntoIterator<Item = (Vec<usize>, F)>,
        prefactor: Scalar<F>,
    ) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Unsupported("invariant polynomial of degree 0".into()));
        }
        let mut map = BTreeMap::new();
        for (mut key, v) in values {
            if key.len() != degree {
                return Err(Error::Arity { expected: degree, got: key.len() });
            }
            if let Some(&a) = key.iter().find(|&&a| a >= dim) {
                return Err(Error::OutOfRange(format!("basis index {a} for dimension {dim}")));
            }
            key.sort_unstable();
            if let Some(old) = map.get(&key) {
                if old != &v {
                    return Err(Error::Parse(format!("conflicting values for tuple {key:?}")));
                }
            }
            if !v.is_zero() {
                map.insert(key, v);
            }
        }
        Ok(Self { name: name.into(), dim, degree, values: map, prefactor })
    }

    /// `values(a_1..a_k)` = average over orderings of `tr(M_{a_σ1} ··· M_{a_σk})`.
    pub fn symmetrized_trace(algebra: &LieAlgebra<F>, k: usize) -> Result<Self> {
        let ms = algebra.matrices().ok_or(Error::MissingMatrices)?;
        let mut values = Vec::new();
        for key in (0..algebra.dim()).combinations_with_replacement(k) {
            let orderings = distinct_orderings(&key);
            let mut sum = F::zero();
            for ord in &orderings {
                let prod = ord[1..].iter().fold(ms[ord[0]].clone(), |acc, &a| acc.mul(&ms[a]));
                sum = sum.add_ref(&prod.trace());
            }
            let avg = sum / F::from_i64(orderings.len() as i64);
            values.push((key, avg));
        }
        Self::from_values(format!("trace^{k}"), algebra.dim(), k, values, Scalar::plain(F::one()))
    }

    /// The scaled Pfaffian on `so(n)`, `n = 2k`, in the basis `E_ij - E_ji`:
    ///
    /// ```text
    /// Pf~(A) = (2π)^-k (-1)^k / (2^k k!) Σ_σ ε(σ) A_{σ1σ2} ··· A_{σ(n-1)σn}
    /// ```
    ///
    /// The permutation sum is expanded with `k` independent arguments to get
    /// the polarized values; the prefactor is stored separately.
    pub fn pfaffian(n: usize) -> Result<Self> {
        if n == 0 || n % 2 == 1 {
            return Err(Error::OddDimension(n));
        }
        let k = n / 2;
        let dim = n * (n - 1) / 2;
        let mut acc: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
        for sigma in (0..n).permutations(n) {
            let mut negative = permutation_is_odd(&sigma);
            let mut key = Vec::with_capacity(k);
            for pair in sigma.chunks(2) {
                let (i, j) = (pair[0], pair[1]);
                // (E_ab - E_ba)_{ij} is +1 for (i,j)=(a,b), -1 for (b,a)
                if i > j {
                    negative = !negative;
                }
                key.push(so_index(n, i.min(j), i.max(j)));
            }
            key.sort_unstable();
            *acc.entry(key).or_insert(0) += if negative { -1 } else { 1 };
        }
        // each sorted key of k distinct pairs was reached once per slot ordering
        let k_fact = factorial(k);
        let values = acc.into_iter().map(|(key, v)| (key, F::from_ratio(v, k_fact)));
        let sign = if k.is_multiple_of(2) { 1 } else { -1 };
        let prefactor = Scalar::new(F::from_ratio(sign, (1i64 << k) * k_fact), k as i32);
        Self::from_values(format!("pfaffian({n})"), dim, k, values, prefactor)
    }

    /// Polarization of the product `λ_1 ··· λ_k` of linear functionals, each
    /// given by its values on the basis.
    pub fn from_linear_forms(name: impl Into<String>, dim: usize, forms: &[Vec<F>]) -> Result<Self> {
        let k = forms.len();
        if forms.iter().any(|f| f.len() != dim) {
            return Err(Error::AlgebraMismatch);
        }
        let k_fact = F::from_i64(factorial(k));
        let mut values = Vec::new();
        for key in (0..dim).combinations_with_replacement(k) {
            // (1/k!) Σ_τ Π_m λ_{τ(m)}(e_{key_m})
            let mut sum = F::zero();
            for tau in (0..k).permutations(k) {
                let term = tau.iter().zip(&key).fold(F::one(), |acc, (&f, &a)| acc.mul_ref(&forms[f][a]));
                sum = sum.add_ref(&term);
            }
            values.push((key, sum / k_fact.clone()));
        }
        Self::from_values(name, dim, k, values, Scalar::plain(F::one()))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn prefactor(&self) -> &Scalar<F> {
        &self.prefactor
    }

    pub fn with_prefactor(mut self, prefactor: Scalar<F>) -> Self {
        self.prefactor = prefactor;
        self
    }

    /// Nonzero stored values, keyed by sorted tuples. The prefactor is not
    /// included.
    pub fn values(&self) -> &BTreeMap<Vec<usize>, F> {
        &self.values
    }

    /// `P(e_{a_1}, ..., e_{a_k})` without the prefactor.
    pub fn value(&self, tuple: &[usize]) -> F {
        let mut key = tuple.to_vec();
        key.sort_unstable();
        self.values.get(&key).cloned().unwrap_or_else(F::zero)
    }

    /// `prefactor · Σ P(e_{a_1},…,e_{a_k}) args_1^{a_1} ∧ … ∧ args_k^{a_k}`.
    pub fn evaluate(&self, args: &[&LieValuedForm<F>]) -> Result<GradedElement<F>> {
        if args.len() != self.degree {
            return Err(Error::Arity { expected: self.degree, got: args.len() });
        }
        if args.iter().any(|x| x.dim() != self.dim) {
            return Err(Error::AlgebraMismatch);
        }
        let ctx = args[0].component(0).context().clone();
        let mut out = GradedElement::zero(&ctx);
        for (key, v) in &self.values {
            for ord in distinct_orderings(key) {
                let mut prod: Option<GradedElement<F>> = None;
                for (arg, &a) in args.iter().zip(&ord) {
                    let c = arg.component(a);
                    if c.is_zero() {
                        prod = None;
                        break;
                    }
                    prod = Some(match prod {
                        None => c.scale(v),
                        Some(p) => p.checked_mul(c)?,
                    });
                    if prod.as_ref().is_some_and(GradedElement::is_zero) {
                        break;
                    }
                }
                if let Some(p) = prod {
                    out = out.checked_add(&p)?;
                }
            }
        }
        Ok(out.scale_scalar(&self.prefactor))
    }

    /// `P(x_1, ..., x_k)` on coordinate vectors, prefactor included.
    pub fn evaluate_numeric(&self, args: &[&[F]]) -> Result<Scalar<F>> {
        if args.len() != self.degree {
            return Err(Error::Arity { expected: self.degree, got: args.len() });
        }
        if args.iter().any(|x| x.len() != self.dim) {
            return Err(Error::AlgebraMismatch);
        }
        let mut sum = F::zero();
        for (key, v) in &self.values {
            for ord in distinct_orderings(key) {
                let term = args.iter().zip(&ord).fold(v.clone(), |acc, (x, &a)| acc.mul_ref(&x[a]));
                sum = sum.add_ref(&term);
            }
        }
        Ok(Scalar::plain(sum) * self.prefactor.clone())
    }

    /// Infinitesimal `ad`-invariance: for every basis `x` and sorted tuple,
    /// `Σ_i P(a_1, …, [e_x, e_{a_i}], …, a_k) = 0`.
    pub fn ad_invariance(&self, algebra: &LieAlgebra<F>) -> CheckOutcome {
        const NAME: &str = "ad-invariance";
        if algebra.dim() != self.dim {
            return CheckOutcome::fail(NAME, "dimension mismatch");
        }
        for key in (0..self.dim).combinations_with_replacement(self.degree) {
            for x in 0..self.dim {
                let mut sum = F::zero();
                for i in 0..self.degree {
                    for (b, c) in algebra.bracket_of_basis(x, key[i]) {
                        let mut t = key.clone();
                        t[i] = *b;
                        let v = self.value(&t);
                        if !v.is_zero() {
                            sum = sum.add_ref(&c.mul_ref(&v));
                        }
                    }
                }
                if !sum.is_zero() {
                    return CheckOutcome::fail(NAME, format!("x={x}, tuple={key:?}, sum={}", sum.render()));
                }
            }
        }
        CheckOutcome::pass(NAME)
    }
}

/// JSON description of a user-supplied polarized tensor.
///
/// ```json
/// {"degree": 2, "values": [[[0, 0], "1"], [[1, 1], "1"]], "prefactor": "1", "two_pi_exponent": 0}
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub degree: usize,
    pub values: Vec<(Vec<usize>, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prefactor: Option<String>,
    #[serde(default)]
    pub two_pi_exponent: i32,
}

impl PolynomialFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn build<F: Coefficient>(&self, dim: usize) -> Result<InvariantPolynomial<F>> {
        let parse = |s: &str| F::parse_exact(s).ok_or_else(|| Error::Parse(format!("not an exact number: {s:?}")));
        let values = self
            .values
            .iter()
            .map(|(k, v)| Ok((k.clone(), parse(v)?)))
            .collect::<Result<Vec<_>>>()?;
        let prefactor = match &self.prefactor {
            Some(p) => parse(p)?,
            None => F::one(),
        };
        InvariantPolynomial::from_values(
            self.name.clone().unwrap_or_else(|| "custom".into()),
            dim,
            self.degree,
            values,
            Scalar::new(prefactor, self.two_pi_exponent),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Context, Generator};
    use crate::lie::builtin;
    use crate::scalar::{Gaussian, Rational};

    type E = GradedElement<Rational>;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn distinct_orderings_of_multiset() {
        assert_eq!(distinct_orderings(&[0, 0, 1]), vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
        assert_eq!(distinct_orderings(&[0, 1, 2]).len(), 6);
        assert_eq!(distinct_orderings(&[2, 2]).len(), 1);
    }

    #[test]
    fn pfaffian_n2() {
        let p = InvariantPolynomial::<Rational>::pfaffian(2).unwrap();
        // Σ_σ over 2 permutations gives 2a; prefactor -1/2
        assert_eq!(p.value(&[0]), q(2, 1));
        let v = p.evaluate_numeric(&[&[q(3, 1)]]).unwrap();
        assert_eq!(v, Scalar::new(q(-3, 1), 1));
    }

    #[test]
    fn pfaffian_n4_block_diagonal() {
        let p = InvariantPolynomial::<Rational>::pfaffian(4).unwrap();
        let (a, b) = (q(2, 3), q(-5, 7));
        let mut x = vec![q(0, 1); 6];
        x[so_index(4, 0, 1)] = a.clone();
        x[so_index(4, 2, 3)] = b.clone();
        let v = p.evaluate_numeric(&[&x, &x]).unwrap();
        assert_eq!(v, Scalar::new(a * b, 2));
    }

    #[test]
    fn odd_pfaffian_rejected() {
        assert_eq!(InvariantPolynomial::<Rational>::pfaffian(5).unwrap_err(), Error::OddDimension(5));
    }

    #[test]
    fn trace_on_u1() {
        let g = builtin::u::<Gaussian>(1).unwrap();
        let p = InvariantPolynomial::symmetrized_trace(&g, 1).unwrap();
        assert_eq!(p.value(&[0]), Gaussian::imaginary_unit().unwrap());
    }

    #[test]
    fn su2_trace_square_is_killing_multiple() {
        let g = builtin::su2::<Gaussian>().unwrap();
        let p = InvariantPolynomial::symmetrized_trace(&g, 2).unwrap();
        // Killing form of su(2) in this basis is -2 δ_ab; the trace form is -1/2 δ_ab
        for a in 0..3 {
            for b in 0..3 {
                let killing: Gaussian = (0..3)
                    .flat_map(|c| (0..3).map(move |d| (c, d)))
                    .fold(Gaussian::from_i64(0), |acc, (c, d)| {
                        acc + g.constant(d, a, c).clone() * g.constant(c, b, d).clone()
                    });
                assert_eq!(p.value(&[a, b]) * Gaussian::from_i64(4), killing);
            }
        }
        assert!(p.ad_invariance(&g).passed);
    }

    #[test]
    fn gl2_traces_are_invariant() {
        let g = builtin::gl::<Rational>(2).unwrap();
        for k in 1..=3 {
            assert!(InvariantPolynomial::symmetrized_trace(&g, k).unwrap().ad_invariance(&g).passed, "k={k}");
        }
        // a non-invariant tensor is caught
        let bad = InvariantPolynomial::from_values("bad", 4, 1, [(vec![1], q(1, 1))], Scalar::plain(q(1, 1))).unwrap();
        assert!(!bad.ad_invariance(&g).passed);
    }

    #[test]
    fn abelian_product_of_coordinates() {
        let ctx = Context::with_counts(0, 2);
        let w0 = E::generator(&ctx, Generator::even(0));
        let w1 = E::generator(&ctx, Generator::even(1));
        let curv = LieValuedForm::new(vec![w0.clone(), w1.clone()], 2).unwrap();
        let forms = vec![vec![q(1, 1), q(0, 1)], vec![q(0, 1), q(1, 1)]];
        let p = InvariantPolynomial::from_linear_forms("x0*x1", 2, &forms).unwrap();
        assert_eq!(p.evaluate(&[&curv, &curv]).unwrap(), &w0 * &w1);
    }

    #[test]
    fn arity_checked() {
        let p = InvariantPolynomial::<Rational>::pfaffian(4).unwrap();
        let ctx = Context::with_counts(6, 0);
        let f = LieValuedForm::zero(&ctx, 6, 1);
        assert_eq!(p.evaluate(&[&f]).unwrap_err(), Error::Arity { expected: 2, got: 1 });
    }

    #[test]
    fn polynomial_file() {
        let text = r#"{"degree": 2, "values": [[[1, 0], "1/2"]], "prefactor": "3", "two_pi_exponent": 1}"#;
        let p: InvariantPolynomial<Rational> = PolynomialFile::from_json(text).unwrap().build(2).unwrap();
        assert_eq!(p.value(&[0, 1]), q(1, 2));
        assert_eq!(p.prefactor(), &Scalar::new(q(3, 1), 1));
        assert!(PolynomialFile::from_json(r#"{"degree": 1, "values": [], "bogus": 0}"#).is_err());
    }
}
