//! Transgression forms on the associated bundle and the identities they satisfy.
//!
//! Three constructions are provided:
//!
//! * [`tp_integral`]: `TP = k ∫₀¹ P(φ, Ω(t), …, Ω(t)) dt`, integrated exactly in `t`;
//! * [`tp_johnson`]: the closed double sum over `A_ij · P(φ, [φ,φ]^i, Ψ^j, Ω^{k-i-j-1})`;
//! * [`tp_chern_euler`]: the explicit Euler-form transgression on `so(2k) ⊃ so(2k-1)`.
//!
//! In every case `d TP = P(Ω) − P(Ψ)` and `TP` is basic for `h`, which
//! [`verify_transgression`] checks exactly.

use std::fmt;

use itertools::Itertools;
use num_integer::binomial;
use serde::{Deserialize, Serialize};

use crate::algebra::{GradedElement, TPoly};
use crate::check::{CheckOutcome, CheckReport};
use crate::error::{Error, Result};
use crate::invariants::InvariantPolynomial;
use crate::lie::builtin::{self, so_index};
use crate::lie::LieValuedForm;
use crate::scalar::{Coefficient, Scalar};
use crate::weil::UniversalSetup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Integral,
    Johnson,
    Chern,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Integral, Method::Johnson, Method::Chern];

    pub fn name(self) -> &'static str {
        match self {
            Method::Integral => "integral",
            Method::Johnson => "johnson",
            Method::Chern => "chern",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown method {s:?} (expected integral, johnson or chern)")))
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct TransgressionResult<F> {
    /// Homogeneous of degree `2k - 1`, free of `t`.
    pub form: GradedElement<F>,
    pub method: Method,
    pub polynomial: String,
    pub degree: usize,
    pub checks: CheckReport,
}

impl<F: Coefficient> TransgressionResult<F> {
    fn new(form: GradedElement<F>, method: Method, p: &InvariantPolynomial<F>) -> Self {
        Self { form, method, polynomial: p.name().to_string(), degree: p.degree(), checks: CheckReport::new() }
    }
}

fn check_dims<F: Coefficient>(setup: &UniversalSetup<F>, p: &InvariantPolynomial<F>) -> Result<()> {
    if p.dim() != setup.dim() {
        return Err(Error::AlgebraMismatch);
    }
    Ok(())
}

/// `P(Ω, …, Ω)`.
pub fn characteristic_form<F: Coefficient>(
    p: &InvariantPolynomial<F>,
    curvature: &LieValuedForm<F>,
) -> Result<GradedElement<F>> {
    p.evaluate(&vec![curvature; p.degree()])
}

/// `P(φ, Ω(t), …, Ω(t))` as a polynomial in `t`.
pub fn transgression_integrand<F: Coefficient>(
    setup: &UniversalSetup<F>,
    p: &InvariantPolynomial<F>,
) -> Result<GradedElement<F>> {
    check_dims(setup, p)?;
    let mut args = vec![setup.phi()];
    args.extend(std::iter::repeat_n(setup.omega_t_curvature(), p.degree() - 1));
    p.evaluate(&args)
}

/// `TP = k ∫₀¹ P(φ, Ω(t), …, Ω(t)) dt`.
pub fn tp_integral<F: Coefficient>(
    setup: &UniversalSetup<F>,
    p: &InvariantPolynomial<F>,
) -> Result<TransgressionResult<F>> {
    let integrand = transgression_integrand(setup, p)?;
    let form = integrand.integrate_unit_interval().scale(&F::from_i64(p.degree() as i64));
    Ok(TransgressionResult::new(form, Method::Integral, p))
}

fn factorial<F: Coefficient>(n: usize) -> F {
    (1..=n as i64).fold(F::one(), |acc, m| acc * F::from_i64(m))
}

/// `A_ij = (-1)^i k!(k-j-1)!(i+j)! / (2^i i! j! (k-i-j-1)! (k+i)!)`
/// for `i, j ≥ 0`, `i + j ≤ k - 1`.
pub fn coefficient_a<F: Coefficient>(k: usize, i: usize, j: usize) -> Result<Scalar<F>> {
    if k == 0 || i + j > k - 1 {
        return Err(Error::OutOfRange(format!("A_({i},{j}) needs i + j <= k - 1 with k = {k}")));
    }
    let num = factorial::<F>(k) * factorial(k - j - 1) * factorial(i + j);
    let den = F::from_i64(1i64 << i) * factorial(i) * factorial(j) * factorial(k - i - j - 1) * factorial(k + i);
    let value = num / den;
    Ok(Scalar::plain(if i % 2 == 1 { -value } else { value }))
}

/// `A_ij` by integrating the multinomial expansion term in `t`:
/// `k · (k-1)!/(i! j! (k-i-j-1)!) · (-1/2)^i · ∫₀¹ t^{k-j-1} (1-t)^{i+j} dt`.
pub fn coefficient_a_by_integration<F: Coefficient>(k: usize, i: usize, j: usize) -> Result<Scalar<F>> {
    if k == 0 || i + j > k - 1 {
        return Err(Error::OutOfRange(format!("A_({i},{j}) needs i + j <= k - 1 with k = {k}")));
    }
    let one_minus_t = TPoly::from_coeffs(vec![F::one(), -F::one()]);
    let integrand = TPoly::monomial(F::one(), k - j - 1).mul(&one_minus_t.pow(i + j));
    let multinomial = factorial::<F>(k - 1) / (factorial::<F>(i) * factorial(j) * factorial(k - i - j - 1));
    let half_pow = (0..i).fold(F::one(), |acc, _| acc * F::from_ratio(-1, 2));
    Ok(Scalar::plain(F::from_i64(k as i64) * multinomial * half_pow * integrand.integrate_unit_interval()))
}

/// The closed form, checked against the integration route for `k ≤ max_k`.
pub fn coefficient_consistency<F: Coefficient>(max_k: usize) -> CheckOutcome {
    for k in 1..=max_k {
        for i in 0..k {
            for j in 0..k - i {
                let closed = coefficient_a::<F>(k, i, j).expect("in range");
                let integrated = coefficient_a_by_integration::<F>(k, i, j).expect("in range");
                if closed != integrated {
                    return CheckOutcome::fail(
                        "coefficients",
                        format!("k={k}, (i,j)=({i},{j}): closed {closed} vs integral {integrated}"),
                    );
                }
            }
        }
    }
    CheckOutcome::pass("coefficients")
}

/// `TP = Σ_{i,j} A_ij · P(φ, [φ,φ]^i, Ψ^j, Ω^{k-i-j-1})`.
pub fn tp_johnson<F: Coefficient>(
    setup: &UniversalSetup<F>,
    p: &InvariantPolynomial<F>,
) -> Result<TransgressionResult<F>> {
    tp_johnson_with(setup, p, coefficient_a)
}

/// [`tp_johnson`] with caller-supplied coefficients `(k, i, j) -> A_ij`.
pub fn tp_johnson_with<F: Coefficient>(
    setup: &UniversalSetup<F>,
    p: &InvariantPolynomial<F>,
    coefficient: impl Fn(usize, usize, usize) -> Result<Scalar<F>>,
) -> Result<TransgressionResult<F>> {
    check_dims(setup, p)?;
    let k = p.degree();
    let phi_sq = setup.bracket(setup.phi(), setup.phi())?;
    let mut form = GradedElement::zero(setup.context());
    for i in 0..k {
        for j in 0..k - i {
            let a = coefficient(k, i, j)?;
            if a.is_zero() {
                continue;
            }
            let mut args = vec![setup.phi()];
            args.extend(std::iter::repeat_n(&phi_sq, i));
            args.extend(std::iter::repeat_n(setup.psi_curvature(), j));
            args.extend(std::iter::repeat_n(setup.curvature(), k - i - j - 1));
            let term = p.evaluate(&args)?.scale_scalar(&a);
            form = form.checked_add(&term)?;
        }
    }
    Ok(TransgressionResult::new(form, Method::Johnson, p))
}

/// The matrix size `n` if `setup` is `so(n) ⊃ so(n-1)` in the standard basis
/// with `n` even.
pub fn euler_setup_size<F: Coefficient>(setup: &UniversalSetup<F>) -> Result<usize> {
    let dim = setup.dim();
    // dim = n(n-1)/2
    let n = (1..=2 * dim + 1).find(|n| n * (n - 1) / 2 >= dim).unwrap_or(0);
    let shape_err = || Error::Unsupported("the Euler transgression needs so(2k) over so(2k-1)".into());
    if n < 2 || n * (n - 1) / 2 != dim || n % 2 == 1 {
        return Err(shape_err());
    }
    let standard = builtin::so::<F>(n)?;
    if standard.entries() != setup.algebra().entries() {
        return Err(shape_err());
    }
    let h: Vec<usize> = (0..n - 1).flat_map(|i| (i + 1..n - 1).map(move |j| so_index(n, i, j))).sorted().collect();
    if setup.split().h_indices() != h.as_slice() {
        return Err(shape_err());
    }
    Ok(n)
}

fn double_factorial(n: usize) -> i64 {
    (1..=n as i64).rev().step_by(2).product()
}

fn permutation_is_odd(perm: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

/// How the matrix entries `ω_ij`, `Ω_ij` of the Euler formula are read off
/// the components in the basis `E_ij - E_ji`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryReading {
    /// `ω_ij` is the `(i, j)` entry of `Σ ω^a E_a`.
    Standard,
    /// `ω_ij` is the `(i, j)` entry of `-Σ ω^a E_a`, the realization in which
    /// `½[φ,φ]` has `(α, β)` block `+ω_αn ω_βn`.
    Opposite,
}

/// The double sum of the Euler formula with entries read according to
/// `reading`, as written:
///
/// ```text
/// (2π)^-k Σ_{j<k} (-1)^{j+1} / (2^j j! (2k-2j-1)!!)
///     Σ_α ε(α) Ω_{α1α2} ··· Ω_{α(2j-1)α(2j)} ω_{α(2j+1)n} ··· ω_{α(n-1)n}
/// ```
///
/// with `α` ranging over permutations of `{1, …, n-1}`.
pub fn chern_euler_sum<F: Coefficient>(setup: &UniversalSetup<F>, reading: EntryReading) -> Result<GradedElement<F>> {
    let n = euler_setup_size(setup)?;
    let k = n / 2;
    let last = n - 1;
    let ctx = setup.context();
    let entry_sign = match reading {
        EntryReading::Standard => F::one(),
        EntryReading::Opposite => -F::one(),
    };
    let curvature_entry = |a: usize, b: usize| -> GradedElement<F> {
        if a < b {
            setup.curvature().component(so_index(n, a, b)).scale(&entry_sign)
        } else {
            setup.curvature().component(so_index(n, b, a)).scale(&-entry_sign.clone())
        }
    };
    let connection_entries: Vec<GradedElement<F>> =
        (0..last).map(|a| setup.omega().component(so_index(n, a, last)).scale(&entry_sign)).collect();
    let mut form = GradedElement::zero(ctx);
    for j in 0..k {
        let den = (1i64 << j) * (1..=j as i64).product::<i64>() * double_factorial(2 * k - 2 * j - 1);
        let sign = if j % 2 == 0 { -1 } else { 1 };
        let mut sum = GradedElement::zero(ctx);
        for alpha in (0..last).permutations(last) {
            let mut term = GradedElement::one(ctx);
            for m in 0..j {
                term = &term * &curvature_entry(alpha[2 * m], alpha[2 * m + 1]);
            }
            for &a in &alpha[2 * j..] {
                term = &term * &connection_entries[a];
                if term.is_zero() {
                    break;
                }
            }
            sum = if permutation_is_odd(&alpha) { &sum - &term } else { &sum + &term };
        }
        form = &form + &sum.scale(&F::from_ratio(sign, den));
    }
    Ok(form.with_two_pi_exponent(k as i32))
}

/// The Euler-form transgression on the unit sphere bundle, `n = 2k`, with
/// `d TP = Pf(Ω)` for the shipped [`InvariantPolynomial::pfaffian`].
///
/// The formula is evaluated in the [`EntryReading::Opposite`] realization,
/// where it transgresses `A ↦ Pf(-A) = (-1)^k Pf(A)`; the result is
/// multiplied by `(-1)^k` to refer to `Pf` itself.
pub fn tp_chern_euler<F: Coefficient>(setup: &UniversalSetup<F>) -> Result<TransgressionResult<F>> {
    let n = euler_setup_size(setup)?;
    let mut form = chern_euler_sum(setup, EntryReading::Opposite)?;
    if (n / 2) % 2 == 1 {
        form = -form;
    }
    let pf = InvariantPolynomial::pfaffian(n)?;
    Ok(TransgressionResult::new(form, Method::Chern, &pf))
}

/// Runs `method` on `(setup, p)`.
pub fn transgress<F: Coefficient>(
    setup: &UniversalSetup<F>,
    p: &InvariantPolynomial<F>,
    method: Method,
) -> Result<TransgressionResult<F>> {
    match method {
        Method::Integral => tp_integral(setup, p),
        Method::Johnson => tp_johnson(setup, p),
        Method::Chern => tp_chern_euler(setup),
    }
}

/// `d TP = P(Ω) − P(Ψ)`, `ι_x TP = 0` and `L_x TP = 0` for every `x ∈ h`,
/// plus degree bookkeeping.
pub fn verify_transgression<F: Coefficient>(
    result: &TransgressionResult<F>,
    setup: &UniversalSetup<F>,
    p: &InvariantPolynomial<F>,
) -> Result<CheckReport> {
    let mut report = CheckReport::new();
    let tag = result.method.name();
    let k = p.degree();

    let form = &result.form;
    let well_formed = form.is_t_free() && form.is_homogeneous_of(2 * k - 1);
    report.push(if well_formed {
        CheckOutcome::pass(format!("degree[{tag}]"))
    } else {
        CheckOutcome::fail(format!("degree[{tag}]"), format!("expected a t-free form of degree {}", 2 * k - 1))
    });

    let p_omega = characteristic_form(p, setup.curvature())?;
    let p_psi = characteristic_form(p, setup.psi_curvature())?;
    let residual = setup.checked_d(form)?.checked_sub(&p_omega)?.checked_add(&p_psi)?;
    report.push(CheckOutcome::zero(format!("transgression[{tag}]"), &residual));

    report.push(basic_check(&format!("horizontal[{tag}]"), setup, |x| setup.interior_apply(x, form))?);
    report.push(basic_check(&format!("invariant[{tag}]"), setup, |x| setup.lie_derivative(x, form))?);
    Ok(report)
}

fn basic_check<F: Coefficient>(
    name: &str,
    setup: &UniversalSetup<F>,
    apply: impl Fn(usize) -> Result<GradedElement<F>>,
) -> Result<CheckOutcome> {
    for &x in setup.split().h_indices() {
        let r = apply(x)?;
        if !r.is_zero() {
            return Ok(CheckOutcome::fail(name, format!("x={x}: {}", crate::check::witness(&r))));
        }
    }
    Ok(CheckOutcome::pass(name))
}

/// `d/dt P(Ω(t), …) = k d P(φ, Ω(t), …)` as polynomials in `t`.
pub fn derivative_identity_check<F: Coefficient>(
    setup: &UniversalSetup<F>,
    p: &InvariantPolynomial<F>,
) -> Result<CheckOutcome> {
    check_dims(setup, p)?;
    let lhs = characteristic_form(p, setup.omega_t_curvature())?.t_derivative();
    let rhs = setup.checked_d(&transgression_integrand(setup, p)?)?.scale(&F::from_i64(p.degree() as i64));
    Ok(CheckOutcome::zero("derivative-identity", &lhs.checked_sub(&rhs)?))
}

/// `P([φ,φ], Ω(t), …) + (k−1) P(φ, [Ω(t),φ], Ω(t), …) = 0`.
pub fn polarization_identity_check<F: Coefficient>(
    setup: &UniversalSetup<F>,
    p: &InvariantPolynomial<F>,
) -> Result<CheckOutcome> {
    check_dims(setup, p)?;
    let k = p.degree();
    let omega_t = setup.omega_t_curvature();
    let phi_sq = setup.bracket(setup.phi(), setup.phi())?;
    let mut first = vec![&phi_sq];
    first.extend(std::iter::repeat_n(omega_t, k - 1));
    let mut total = p.evaluate(&first)?;
    if k > 1 {
        let comm = setup.bracket(omega_t, setup.phi())?;
        let mut second = vec![setup.phi(), &comm];
        second.extend(std::iter::repeat_n(omega_t, k - 2));
        total = total.checked_add(&p.evaluate(&second)?.scale(&F::from_i64(k as i64 - 1)))?;
    }
    Ok(CheckOutcome::zero("polarization-identity", &total))
}

/// Exact equality of the forms produced by different methods.
pub fn agreement_check<F: Coefficient>(results: &[TransgressionResult<F>]) -> CheckOutcome {
    let Some(first) = results.first() else {
        return CheckOutcome::pass("agreement");
    };
    for other in &results[1..] {
        if other.form != first.form {
            let diff = other.form.checked_sub(&first.form);
            let witness = match diff {
                Ok(d) => crate::check::witness(&d),
                Err(e) => e.to_string(),
            };
            return CheckOutcome::fail("agreement", format!("{} - {}: {witness}", other.method, first.method));
        }
    }
    CheckOutcome::pass("agreement")
}

/// Number of `(i, j)` pairs in the double sum for degree `k`.
pub fn johnson_term_count(k: usize) -> usize {
    binomial(k + 1, 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{builtin, ReductiveSplit};
    use crate::scalar::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn a_coefficients_small() {
        for k in 1..=8 {
            assert_eq!(coefficient_a::<Rational>(k, 0, 0).unwrap(), Scalar::plain(q(1, 1)));
        }
        assert_eq!(coefficient_a::<Rational>(2, 0, 1).unwrap(), Scalar::plain(q(1, 1)));
        assert_eq!(coefficient_a::<Rational>(2, 1, 0).unwrap(), Scalar::plain(q(-1, 6)));
        assert!(coefficient_a::<Rational>(2, 1, 1).is_err());
        assert!(coefficient_consistency::<Rational>(6).passed);
    }

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial(1), 1);
        assert_eq!(double_factorial(5), 15);
        assert_eq!(double_factorial(0), 1);
        assert_eq!(johnson_term_count(3), 6);
    }

    #[test]
    fn linear_abelian_case() {
        let g = builtin::abelian::<Rational>(2).unwrap();
        let split = ReductiveSplit::new(&g, &[0]).unwrap();
        let setup = UniversalSetup::new(g, split).unwrap();
        let p = InvariantPolynomial::from_linear_forms("x2", 2, &[vec![q(0, 1), q(1, 1)]]).unwrap();
        let tp = tp_integral(&setup, &p).unwrap();
        assert_eq!(tp.form, setup.phi().component(1).clone());
        assert!(verify_transgression(&tp, &setup, &p).unwrap().all_passed());
    }

    #[test]
    fn so2_euler_single_term() {
        let g = builtin::so::<Rational>(2).unwrap();
        let split = ReductiveSplit::trivial(&g);
        let setup = UniversalSetup::new(g, split).unwrap();
        let chern = tp_chern_euler(&setup).unwrap();
        let expected = setup.omega().component(0).scale(&q(-1, 1)).with_two_pi_exponent(1);
        assert_eq!(chern.form, expected);
        let pf = InvariantPolynomial::pfaffian(2).unwrap();
        assert_eq!(tp_integral(&setup, &pf).unwrap().form, expected);
    }

    #[test]
    fn standard_reading_breaks_the_cubic_term() {
        let g = builtin::so::<Rational>(4).unwrap();
        let split = ReductiveSplit::block(&g, 3).unwrap();
        let setup = UniversalSetup::new(g, split).unwrap();
        let pf = InvariantPolynomial::pfaffian(4).unwrap();
        let integral = tp_integral(&setup, &pf).unwrap().form;
        assert_eq!(tp_chern_euler(&setup).unwrap().form, integral);
        let standard = chern_euler_sum(&setup, EntryReading::Standard).unwrap();
        assert_ne!(standard, integral);
        let diff = &standard - &integral;
        assert!(diff.terms().all(|(m, _)| m.odd().len() == 3 && m.even().is_empty()));
    }

    #[test]
    fn chern_rejects_wrong_shape() {
        let g = builtin::so::<Rational>(4).unwrap();
        let split = ReductiveSplit::trivial(&g);
        let setup = UniversalSetup::new(g, split).unwrap();
        assert!(matches!(tp_chern_euler(&setup), Err(Error::Unsupported(_))));
        let g = builtin::so::<Rational>(3).unwrap();
        let split = ReductiveSplit::block(&g, 2).unwrap();
        let setup = UniversalSetup::new(g, split).unwrap();
        assert!(tp_chern_euler(&setup).is_err());
    }
}
