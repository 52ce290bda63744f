//! Run reports and their text and JSON renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;

use transgress::check::CheckOutcome;

use crate::config::RunConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl From<CheckOutcome> for CheckEntry {
    fn from(o: CheckOutcome) -> Self {
        Self { name: o.name, status: if o.passed { Status::Pass } else { Status::Fail }, witness: o.witness }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h_dim: Option<usize>,
    /// Stored polarized values per polynomial.
    pub polynomial_values: BTreeMap<String, usize>,
    /// Terms in each computed transgression form.
    pub form_terms: BTreeMap<String, usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub config: RunConfig,
    pub checks: Vec<CheckEntry>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub forms: BTreeMap<String, Vec<(String, String)>>,
    pub stats: Stats,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Report {
    pub fn new(config: RunConfig) -> Self {
        Self { config, checks: Vec::new(), forms: BTreeMap::new(), stats: Stats::default(), elapsed: Duration::ZERO }
    }

    pub fn push(&mut self, outcome: CheckOutcome) {
        self.checks.push(outcome.into());
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: impl Into<String>) {
        self.push(CheckOutcome::fail(name, witness));
    }

    /// True iff every recorded check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let c = &self.config;
        let mut out = String::new();
        let methods: Vec<_> = c.methods.iter().map(|m| m.name()).collect();
        let _ = writeln!(
            out,
            "algebra {} over {}, polynomial {}, methods {}, field {:?}",
            c.algebra,
            c.subalgebra,
            c.polynomials.join(", "),
            methods.join(", "),
            c.field
        );
        if let Some(p) = &c.perturb {
            let _ = writeln!(out, "perturbation {p:?}");
        }
        for (name, terms) in &self.forms {
            let body: Vec<String> = terms.iter().map(|(coef, mono)| format!("{coef} {mono}")).collect();
            let rendered = if body.is_empty() { "0".to_string() } else { body.join(" ") };
            let _ = writeln!(out, "TP[{name}] = {rendered}");
        }
        for check in &self.checks {
            let status = match check.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            match &check.witness {
                Some(w) => {
                    let _ = writeln!(out, "{status} {}: {w}", check.name);
                }
                None => {
                    let _ = writeln!(out, "{status} {}", check.name);
                }
            }
        }
        let failed = self.checks.iter().filter(|c| c.status == Status::Fail).count();
        let _ = writeln!(
            out,
            "{} checks, {failed} failed, {:.3}s",
            self.checks.len(),
            self.elapsed.as_secs_f64()
        );
        out
    }
}
