//! Pass/fail records shared by every verification routine.

use serde::Serialize;

use crate::algebra::GradedElement;
use crate::scalar::Coefficient;

/// How many terms of a nonzero residual are quoted in a witness.
const WITNESS_TERMS: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckOutcome {
    pub fn pass(name: impl Into<String>) -> Self {
        Self { name: name.into(), passed: true, witness: None }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Self { name: name.into(), passed: false, witness: Some(witness.into()) }
    }

    /// Passes iff `residual` is exactly zero; otherwise quotes its leading terms.
    pub fn zero<F: Coefficient>(name: impl Into<String>, residual: &GradedElement<F>) -> Self {
        if residual.is_zero() {
            Self::pass(name)
        } else {
            Self::fail(name, witness(residual))
        }
    }
}

pub fn witness<F: Coefficient>(residual: &GradedElement<F>) -> String {
    let terms = residual.render_terms();
    let mut parts: Vec<String> = terms
        .iter()
        .take(WITNESS_TERMS)
        .map(|(c, m)| format!("{c} {m}"))
        .collect();
    if terms.len() > WITNESS_TERMS {
        parts.push(format!("... ({} terms)", terms.len()));
    }
    parts.join(" + ")
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub checks: Vec<CheckOutcome>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, outcome: CheckOutcome) {
        self.checks.push(outcome);
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl FromIterator<CheckOutcome> for CheckReport {
    fn from_iter<I: IntoIterator<Item = CheckOutcome>>(iter: I) -> Self {
        Self { checks: iter.into_iter().collect() }
    }
}
