//! The universal connection: free generators `w[a]` (the connection `ω`,
//! degree 1) and `W[a]` (the curvature `Ω`, degree 2) with
//!
//! ```text
//! d w[a] = W[a] - 1/2 Σ c^a_{bc} w[b] w[c]
//! d W[a] = Σ c^a_{bc} W[b] w[c]
//! ```
//!
//! plus the interior products and Lie derivatives along `h`, and everything
//! derived from a reductive split: `ψ`, `φ`, `Ψ`, `d_H φ` and the deformation
//! family `Ω(t)`.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::sample::{random_element, SampleShape};
use crate::algebra::{Context, Derivation, Generator, GradedElement, TPoly};
use crate::check::{witness, CheckOutcome, CheckReport};
use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, LieValuedForm, ReductiveSplit};
use crate::scalar::Coefficient;

#[derive(Clone, Debug)]
pub struct UniversalSetup<F> {
    algebra: Arc<LieAlgebra<F>>,
    split: ReductiveSplit,
    ctx: Arc<Context>,
    omega: LieValuedForm<F>,
    curvature: LieValuedForm<F>,
    d: Derivation<F>,
    psi: LieValuedForm<F>,
    phi: LieValuedForm<F>,
    psi_curvature: LieValuedForm<F>,
    covariant_d_phi: LieValuedForm<F>,
    omega_t: LieValuedForm<F>,
}

impl<F: Coefficient> UniversalSetup<F> {
    pub fn new(algebra: impl Into<Arc<LieAlgebra<F>>>, split: ReductiveSplit) -> Result<Self> {
        let algebra = algebra.into();
        let dim = algebra.dim();
        if split.dim() != dim {
            return Err(Error::AlgebraMismatch);
        }
        let ctx = Context::new(
            (0..dim).map(|a| format!("w[{a}]")).collect(),
            (0..dim).map(|a| format!("W[{a}]")).collect(),
        );
        let gen = |g: Generator| GradedElement::<F>::generator(&ctx, g);
        let omega = LieValuedForm::new((0..dim as u32).map(|a| gen(Generator::odd(a))).collect(), 1)?;
        let curvature = LieValuedForm::new((0..dim as u32).map(|a| gen(Generator::even(a))).collect(), 2)?;

        let half = F::from_ratio(1, 2);
        let omega_sq = algebra.bracket(&omega, &omega)?;
        let curv_omega = algebra.bracket(&curvature, &omega)?;
        let d = Derivation::new(&ctx, 1, |g| {
            let a = g.id as usize;
            match g.parity {
                crate::algebra::Parity::Odd => curvature.component(a) - &omega_sq.component(a).scale(&half),
                crate::algebra::Parity::Even => curv_omega.component(a).clone(),
            }
        })?;

        let (psi, phi) = omega.project(&split)?;
        let zero = LieValuedForm::zero(&ctx, dim, 2);
        let mut setup = Self {
            algebra,
            split,
            ctx,
            omega,
            curvature,
            d,
            psi,
            phi,
            psi_curvature: zero.clone(),
            covariant_d_phi: zero.clone(),
            omega_t: zero,
        };
        setup.psi_curvature = setup.structure_curvature(&setup.psi)?;
        setup.covariant_d_phi = setup.covariant_d(&setup.phi)?;
        setup.omega_t = setup.omega_t_from_covariant_split()?;
        Ok(setup)
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra<F>> {
        &self.algebra
    }

    pub fn split(&self) -> &ReductiveSplit {
        &self.split
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// The universal connection `ω`.
    pub fn omega(&self) -> &LieValuedForm<F> {
        &self.omega
    }

    /// The universal curvature `Ω`.
    pub fn curvature(&self) -> &LieValuedForm<F> {
        &self.curvature
    }

    /// `ψ = p_h ∘ ω`, a connection for the subgroup.
    pub fn psi(&self) -> &LieValuedForm<F> {
        &self.psi
    }

    /// `φ = p_p ∘ ω`.
    pub fn phi(&self) -> &LieValuedForm<F> {
        &self.phi
    }

    /// `Ψ = dψ + ½[ψ,ψ]`.
    pub fn psi_curvature(&self) -> &LieValuedForm<F> {
        &self.psi_curvature
    }

    /// `d_H φ = dφ + [ψ,φ]`.
    pub fn covariant_d_phi(&self) -> &LieValuedForm<F> {
        &self.covariant_d_phi
    }

    /// `Ω(t) = Ψ + t d_Hφ + ½t²[φ,φ]`.
    pub fn omega_t_curvature(&self) -> &LieValuedForm<F> {
        &self.omega_t
    }

    pub fn differential(&self) -> &Derivation<F> {
        &self.d
    }

    pub fn d(&self, x: &GradedElement<F>) -> GradedElement<F> {
        self.d.apply(x)
    }

    pub fn checked_d(&self, x: &GradedElement<F>) -> Result<GradedElement<F>> {
        self.d.checked_apply(x)
    }

    pub fn d_form(&self, x: &LieValuedForm<F>) -> LieValuedForm<F> {
        x.map_with_degree(x.degree() + 1, |c| self.d(c))
    }

    pub fn bracket(&self, x: &LieValuedForm<F>, y: &LieValuedForm<F>) -> Result<LieValuedForm<F>> {
        self.algebra.bracket(x, y)
    }

    /// `dα + ½[α,α]` for a degree-1 form `α`.
    pub fn structure_curvature(&self, alpha: &LieValuedForm<F>) -> Result<LieValuedForm<F>> {
        let sq = self.bracket(alpha, alpha)?.scale(&F::from_ratio(1, 2));
        self.d_form(alpha).checked_add(&sq)
    }

    /// The `ψ`-covariant derivative `d x + [ψ, x]`.
    pub fn covariant_d(&self, x: &LieValuedForm<F>) -> Result<LieValuedForm<F>> {
        self.d_form(x).checked_add(&self.bracket(&self.psi, x)?)
    }

    fn omega_t_from_covariant_split(&self) -> Result<LieValuedForm<F>> {
        let t = TPoly::t();
        let half_t2 = TPoly::monomial(F::from_ratio(1, 2), 2);
        let phi_sq = self.bracket(&self.phi, &self.phi)?;
        self.psi_curvature
            .checked_add(&self.covariant_d_phi.mul_tpoly(&t))?
            .checked_add(&phi_sq.mul_tpoly(&half_t2))
    }

    /// `Ω(t) = (1−t)Ψ − ½t(1−t)[φ,φ] + tΩ`, built without `d_H φ`.
    pub fn omega_t_interpolated(&self) -> Result<LieValuedForm<F>> {
        let one_minus_t = TPoly::from_coeffs(vec![F::one(), -F::one()]);
        // -½ t (1 - t) = -½ t + ½ t²
        let quad = TPoly::from_coeffs(vec![F::zero(), F::from_ratio(-1, 2), F::from_ratio(1, 2)]);
        let phi_sq = self.bracket(&self.phi, &self.phi)?;
        self.psi_curvature
            .mul_tpoly(&one_minus_t)
            .checked_add(&phi_sq.mul_tpoly(&quad))?
            .checked_add(&self.curvature.mul_tpoly(&TPoly::t()))
    }

    /// `Ω(t) = dω(t) + ½[ω(t),ω(t)]` with `ω(t) = ψ + tφ`.
    pub fn omega_t_deformed(&self) -> Result<LieValuedForm<F>> {
        let omega_t = self.psi.checked_add(&self.phi.mul_tpoly(&TPoly::t()))?;
        self.structure_curvature(&omega_t)
    }

    fn check_h(&self, x_index: usize) -> Result<()> {
        if x_index >= self.dim() || !self.split.in_h(x_index) {
            return Err(Error::NotInSubalgebra { index: x_index });
        }
        Ok(())
    }

    /// `ι_x`: `ι(w[a]) = δ^a_x`, `ι(W[a]) = 0`.
    pub fn interior(&self, x_index: usize) -> Result<Derivation<F>> {
        self.check_h(x_index)?;
        Derivation::new(&self.ctx, -1, |g| match g.parity {
            crate::algebra::Parity::Odd if g.id as usize == x_index => GradedElement::one(&self.ctx),
            _ => GradedElement::zero(&self.ctx),
        })
    }

    pub fn interior_apply(&self, x_index: usize, y: &GradedElement<F>) -> Result<GradedElement<F>> {
        self.interior(x_index)?.checked_apply(y)
    }

    /// `L_x = d ι_x + ι_x d`.
    pub fn lie_derivative(&self, x_index: usize, y: &GradedElement<F>) -> Result<GradedElement<F>> {
        let iota = self.interior(x_index)?;
        Ok(self.d.anticommutator(&iota, y))
    }
}

/// Verification of the identities that involve only the connection.
impl<F: Coefficient> UniversalSetup<F> {
    /// `d(d x) = 0` on `samples` seeded random elements.
    pub fn d_squared_check(&self, samples: usize, seed: u64) -> CheckOutcome {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shape = SampleShape { terms: 3, max_odd: 3, max_even: 2, max_t_degree: 1 };
        for _ in 0..samples {
            let x = random_element::<F, _>(&self.ctx, &mut rng, shape);
            let dd = self.d(&self.d(&x));
            if !dd.is_zero() {
                return CheckOutcome::fail("d2", format!("d(d({x})) = {}", witness(&dd)));
            }
        }
        CheckOutcome::pass("d2")
    }

    /// `Ω = Ψ + d_Hφ + ½[φ,φ]` and `d_Hφ = Ω − Ψ − ½[φ,φ]`, componentwise.
    pub fn decomposition_checks(&self) -> Result<CheckReport> {
        let half_phi_sq = self.bracket(&self.phi, &self.phi)?.scale(&F::from_ratio(1, 2));
        let rebuilt = self.psi_curvature.checked_add(&self.covariant_d_phi)?.checked_add(&half_phi_sq)?;
        let write_back = self.curvature.checked_sub(&self.psi_curvature)?.checked_sub(&half_phi_sq)?;
        let mut report = CheckReport::new();
        report.push(form_residual("curvature-decomposition", &self.curvature.checked_sub(&rebuilt)?));
        report.push(form_residual("covariant-write-back", &self.covariant_d_phi.checked_sub(&write_back)?));
        let (_, psi_curv_p) = self.psi_curvature.project(&self.split)?;
        report.push(form_residual("psi-curvature-in-h", &psi_curv_p));
        Ok(report)
    }

    /// The three constructions of `Ω(t)` agree, and `Ω(1) = Ω`, `Ω(0) = Ψ`.
    pub fn deformation_checks(&self) -> Result<CheckReport> {
        let mut report = CheckReport::new();
        let interpolated = self.omega_t_interpolated()?;
        let deformed = self.omega_t_deformed()?;
        report.push(form_residual("omega-t-interpolated", &self.omega_t.checked_sub(&interpolated)?));
        report.push(form_residual("omega-t-deformed", &self.omega_t.checked_sub(&deformed)?));
        let at_one = self.omega_t.substitute_t(&F::one()).checked_sub(&self.curvature)?;
        let at_zero = self.omega_t.substitute_t(&F::zero()).checked_sub(&self.psi_curvature)?;
        report.push(form_residual("omega-t-at-1", &at_one));
        report.push(form_residual("omega-t-at-0", &at_zero));
        Ok(report)
    }

    /// `d_H Ω(t) = t[Ω(t), φ]` with `d_H = d + [ψ, ·]`.
    pub fn bianchi_deformation_check(&self) -> Result<CheckOutcome> {
        let lhs = self.covariant_d(&self.omega_t)?;
        let rhs = self.bracket(&self.omega_t, &self.phi)?.mul_tpoly(&TPoly::t());
        Ok(form_residual("bianchi-deformation", &lhs.checked_sub(&rhs)?))
    }
}

/// Passes iff every component of `residual` vanishes; the witness names the
/// first offending component.
pub(crate) fn form_residual<F: Coefficient>(name: &str, residual: &LieValuedForm<F>) -> CheckOutcome {
    match residual.support().first() {
        None => CheckOutcome::pass(name),
        Some(&a) => CheckOutcome::fail(name, format!("component {a}: {}", witness(residual.component(a)))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::builtin;
    use crate::scalar::Rational;

    fn so4() -> UniversalSetup<Rational> {
        let g = builtin::so::<Rational>(4).unwrap();
        let split = ReductiveSplit::block(&g, 3).unwrap();
        UniversalSetup::new(g, split).unwrap()
    }

    #[test]
    fn abelian_d_omega_is_curvature() {
        let g = builtin::abelian::<Rational>(3).unwrap();
        let split = ReductiveSplit::trivial(&g);
        let s = UniversalSetup::new(g, split).unwrap();
        for a in 0..3 {
            assert_eq!(s.d(s.omega().component(a)), *s.curvature().component(a));
            assert!(s.d(s.curvature().component(a)).is_zero());
        }
    }

    #[test]
    fn structure_equation_residual_vanishes() {
        let s = so4();
        let rebuilt = s.structure_curvature(s.omega()).unwrap();
        assert_eq!(&rebuilt, s.curvature());
        let residual = s.curvature().sub(&rebuilt);
        assert!(s.d_form(&residual).is_zero());
    }

    #[test]
    fn interior_defining_images() {
        let s = so4();
        let x = s.split().h_indices()[1];
        let w = s.omega().component(x);
        assert_eq!(s.interior_apply(x, w).unwrap(), GradedElement::one(s.context()));
        for a in 0..s.dim() {
            assert!(s.interior_apply(x, s.curvature().component(a)).unwrap().is_zero());
        }
        let p = s.split().p_indices()[0];
        assert_eq!(s.interior(p).unwrap_err(), Error::NotInSubalgebra { index: p });
    }

    #[test]
    fn lie_derivative_is_coadjoint() {
        let s = so4();
        for &x in s.split().h_indices() {
            for a in 0..s.dim() {
                let lhs = s.lie_derivative(x, s.omega().component(a)).unwrap();
                let mut rhs = GradedElement::zero(s.context());
                for b in 0..s.dim() {
                    let c = s.algebra().constant(a, x, b);
                    rhs = &rhs - &s.omega().component(b).scale(c);
                }
                assert_eq!(lhs, rhs);
            }
            let one = GradedElement::one(s.context());
            assert!(s.lie_derivative(x, &one).unwrap().is_zero());
        }
    }

    #[test]
    fn psi_curvature_supported_on_h() {
        let s = so4();
        for &a in s.split().p_indices() {
            assert!(s.psi_curvature().component(a).is_zero());
        }
    }
}
