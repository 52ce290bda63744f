//! Executes a validated [`RunConfig`].

use std::time::Instant;

use transgress::check::{CheckOutcome, CheckReport};
use transgress::invariants::{InvariantPolynomial, PolynomialFile};
use transgress::lie::{builtin, AlgebraFile, LieAlgebra, ReductiveSplit};
use transgress::transgression::{
    agreement_check, coefficient_a, coefficient_consistency, derivative_identity_check, polarization_identity_check,
    tp_chern_euler, tp_integral, tp_johnson_with, verify_transgression, Method, TransgressionResult,
};
use transgress::weil::UniversalSetup;
use transgress::{Coefficient, Gaussian, Rational, Scalar};

use crate::config::{AlgebraSpec, CheckKind, Field, Perturbation, PolySpec, RunConfig, SubSpec};
use crate::report::Report;

const D2_SAMPLES: usize = 200;
const D2_SEED: u64 = 0;

/// Runs every requested construction and check. Failures of any kind,
/// including invalid input files, become report entries.
pub fn run(config: &RunConfig) -> Report {
    let start = Instant::now();
    let mut report = Report::new(config.clone());
    match config.field {
        Field::Rational => run_in::<Rational>(config, &mut report),
        Field::Gaussian => run_in::<Gaussian>(config, &mut report),
    }
    report.elapsed = start.elapsed();
    report
}

fn parse_value<F: Coefficient>(s: &str) -> Result<F, String> {
    F::parse_exact(s).ok_or_else(|| format!("not an exact {} number: {s:?}", F::FIELD))
}

fn build_algebra<F: Coefficient>(spec: &AlgebraSpec) -> Result<LieAlgebra<F>, String> {
    let built = match spec {
        AlgebraSpec::So(n) => builtin::so(*n),
        AlgebraSpec::Gl(n) => builtin::gl(*n),
        AlgebraSpec::U(n) => builtin::u(*n),
        AlgebraSpec::Su2 => builtin::su2(),
        AlgebraSpec::Abelian(d) => builtin::abelian(*d),
        AlgebraSpec::File(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            AlgebraFile::from_json(&text).and_then(|f| f.build())
        }
    };
    built.map_err(|e| e.to_string())
}

fn h_indices<F: Coefficient>(spec: &SubSpec, g: &LieAlgebra<F>) -> Result<Vec<usize>, String> {
    match spec {
        SubSpec::Trivial => Ok(Vec::new()),
        SubSpec::Indices(v) => Ok(v.clone()),
        SubSpec::Block(m) => {
            let ms = g.matrices().ok_or("block subalgebras need a matrix realization")?;
            Ok((0..g.dim()).filter(|&a| ms[a].supported_in_block(*m)).collect())
        }
    }
}

fn build_polynomial<F: Coefficient>(spec: &PolySpec, g: &LieAlgebra<F>) -> Result<InvariantPolynomial<F>, String> {
    let built = match spec {
        PolySpec::Pfaffian => {
            let n = (2..).find(|n| n * (n - 1) / 2 >= g.dim()).expect("some n fits");
            InvariantPolynomial::pfaffian(n)
        }
        PolySpec::Trace(k) => InvariantPolynomial::symmetrized_trace(g, *k),
        PolySpec::File(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            PolynomialFile::from_json(&text).and_then(|f| f.build(g.dim()))
        }
    };
    built.map_err(|e| e.to_string())
}

fn first_failure(report: &CheckReport, name: &str) -> CheckOutcome {
    match report.failures().next() {
        None => CheckOutcome::pass(name),
        Some(bad) => CheckOutcome::fail(name, format!("{}: {}", bad.name, bad.witness.as_deref().unwrap_or(""))),
    }
}

fn suffixed(mut o: CheckOutcome, suffix: &str) -> CheckOutcome {
    if !suffix.is_empty() {
        o.name = format!("{} {suffix}", o.name);
    }
    o
}

fn run_in<F: Coefficient>(config: &RunConfig, report: &mut Report) {
    let mut g = match build_algebra::<F>(config.algebra_spec()) {
        Ok(g) => g,
        Err(e) => return report.fail("algebra", e),
    };
    let h = match h_indices(config.sub_spec(), &g) {
        Ok(h) => h,
        Err(e) => return report.fail("split", e),
    };
    if let Some(Perturbation::StructureConstant { a, b, c, delta }) = &config.perturb {
        let dim = g.dim();
        if *a >= dim || *b >= dim || *c >= dim || b == c {
            return report.fail("perturbation", format!("({a},{b},{c}) is not a structure constant of a {dim}-dimensional algebra"));
        }
        match parse_value::<F>(delta) {
            Ok(d) => g = g.perturbed(*a, *b, *c, d),
            Err(e) => return report.fail("perturbation", e),
        }
    }
    report.stats.dim = Some(g.dim());
    report.push(first_failure(&g.validate(), "algebra"));

    let split_report = ReductiveSplit::validate(&g, &h);
    report.push(first_failure(&split_report, "split"));
    if !split_report.all_passed() {
        return;
    }
    let split = ReductiveSplit::new(&g, &h).expect("validated split");
    report.stats.h_dim = Some(split.h_indices().len());

    let mut polys = Vec::new();
    for (spec, label) in config.poly_specs.iter().zip(&config.polynomials) {
        match build_polynomial(spec, &g) {
            Ok(p) => polys.push(p),
            Err(e) => return report.fail(format!("polynomial {label}"), e),
        }
    }
    if let Some(Perturbation::Prefactor { value }) = &config.perturb {
        match parse_value::<F>(value) {
            Ok(v) => {
                polys = polys
                    .into_iter()
                    .map(|p| {
                        let e = p.prefactor().two_pi_exponent;
                        p.with_prefactor(Scalar::new(v.clone(), e))
                    })
                    .collect()
            }
            Err(e) => return report.fail("perturbation", e),
        }
    }
    for p in &polys {
        report.stats.polynomial_values.insert(p.name().to_string(), p.values().len());
    }

    let setup = match UniversalSetup::new(g, split) {
        Ok(s) => s,
        Err(e) => return report.fail("setup", e.to_string()),
    };
    let wants = |c: CheckKind| config.checks.contains(&c);
    let attempt = |name: &str, r: transgress::Result<CheckOutcome>| r.unwrap_or_else(|e| CheckOutcome::fail(name, e.to_string()));
    let attempt_report = |name: &str, r: transgress::Result<CheckReport>| match r {
        Ok(rep) => rep.checks,
        Err(e) => vec![CheckOutcome::fail(name, e.to_string())],
    };

    if wants(CheckKind::D2) {
        report.push(setup.d_squared_check(D2_SAMPLES, D2_SEED));
    }
    if wants(CheckKind::Decomposition) {
        attempt_report("decomposition", setup.decomposition_checks()).into_iter().for_each(|o| report.push(o));
    }
    if wants(CheckKind::Deformation) {
        attempt_report("deformation", setup.deformation_checks()).into_iter().for_each(|o| report.push(o));
    }
    if wants(CheckKind::Bianchi) {
        report.push(attempt("bianchi-deformation", setup.bianchi_deformation_check()));
    }
    if wants(CheckKind::Coefficients) {
        let max_k = polys.iter().map(|p| p.degree()).max().unwrap_or(0).max(6);
        report.push(coefficient_consistency::<F>(max_k));
    }

    let many = polys.len() > 1;
    for p in &polys {
        let suffix = if many { p.name().to_string() } else { String::new() };
        if wants(CheckKind::AdInvariance) {
            report.push(suffixed(p.ad_invariance(setup.algebra()), &suffix));
        }

        let mut results: Vec<TransgressionResult<F>> = Vec::new();
        let mut methods = config.methods.clone();
        if wants(CheckKind::Agreement) && !methods.contains(&Method::Integral) {
            methods.insert(0, Method::Integral);
        }
        for &m in &methods {
            match compute(config, &setup, p, m) {
                Ok(r) => results.push(r),
                Err(e) => report.push(suffixed(CheckOutcome::fail(format!("method[{m}]"), e.to_string()), &suffix)),
            }
        }
        for r in results.iter().filter(|r| config.methods.contains(&r.method)) {
            let key = if many { format!("{}/{}", r.method, p.name()) } else { r.method.to_string() };
            report.stats.form_terms.insert(key.clone(), r.form.len());
            let terms = r
                .form
                .render_terms()
                .into_iter()
                .map(|(c, m)| (if c.starts_with('-') { c } else { format!("+{c}") }, m))
                .collect();
            report.forms.insert(key, terms);
        }
        for r in results.iter().filter(|r| config.methods.contains(&r.method)) {
            let checks = match verify_transgression(r, &setup, p) {
                Ok(rep) => rep.checks,
                Err(e) => vec![CheckOutcome::fail(format!("transgression[{}]", r.method), e.to_string())],
            };
            for o in checks {
                let basic = o.name.starts_with("horizontal") || o.name.starts_with("invariant");
                let kind = if basic { CheckKind::Basicness } else { CheckKind::Transgression };
                if wants(kind) {
                    report.push(suffixed(o, &suffix));
                }
            }
        }
        if wants(CheckKind::Agreement) {
            report.push(suffixed(agreement_check(&results), &suffix));
        }
        if wants(CheckKind::DerivativeIdentity) {
            report.push(suffixed(attempt("derivative-identity", derivative_identity_check(&setup, p)), &suffix));
        }
        if wants(CheckKind::Polarization) {
            report.push(suffixed(attempt("polarization-identity", polarization_identity_check(&setup, p)), &suffix));
        }
    }
}

fn compute<F: Coefficient>(
    config: &RunConfig,
    setup: &UniversalSetup<F>,
    p: &InvariantPolynomial<F>,
    method: Method,
) -> transgress::Result<TransgressionResult<F>> {
    match method {
        Method::Integral => tp_integral(setup, p),
        Method::Chern => tp_chern_euler(setup),
        Method::Johnson => {
            let shift = match &config.perturb {
                Some(Perturbation::Coefficient { i, j, delta }) => Some((
                    *i,
                    *j,
                    F::parse_exact(delta).ok_or_else(|| transgress::Error::Parse(format!("bad delta {delta:?}")))?,
                )),
                _ => None,
            };
            tp_johnson_with(setup, p, |k, i, j| {
                let a = coefficient_a::<F>(k, i, j)?;
                Ok(match &shift {
                    Some((si, sj, d)) if (*si, *sj) == (i, j) => Scalar::new(a.value + d.clone(), a.two_pi_exponent),
                    _ => a,
                })
            })
        }
    }
}
