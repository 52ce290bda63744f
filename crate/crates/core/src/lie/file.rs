//! JSON description of a custom Lie algebra.
//!
//! ```json
//! {
//!   "name": "so(3)",
//!   "dim": 3,
//!   "labels": ["e1", "e2", "e3"],
//!   "entries": [[2, 0, 1, "1"], [2, 1, 0, "-1"], ...],
//!   "matrices": [[["0", "1"], ["-1", "0"]], ...]
//! }
//! ```
//!
//! Each entry `[a, b, c, value]` sets `c^a_{bc}` (0-based indices). Both
//! `[a, b, c, v]` and `[a, c, b, -v]` must be listed. `matrices` is optional.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Coefficient;

use super::algebra::LieAlgebra;
use super::matrix::SquareMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub entries: Vec<(usize, usize, usize, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrices: Option<Vec<Vec<Vec<String>>>>,
}

fn parse_value<F: Coefficient>(s: &str) -> Result<F> {
    F::parse_exact(s).ok_or_else(|| Error::Parse(format!("not an exact {} number: {s:?}", F::FIELD)))
}

impl AlgebraFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("algebra file serializes")
    }

    pub fn from_algebra<F: Coefficient>(algebra: &LieAlgebra<F>) -> Self {
        Self {
            name: Some(algebra.name().to_string()),
            dim: algebra.dim(),
            labels: Some(algebra.labels().to_vec()),
            entries: algebra.entries().into_iter().map(|(a, b, c, v)| (a, b, c, v.render())).collect(),
            matrices: algebra.matrices().map(|ms| {
                ms.iter()
                    .map(|m| m.rows().into_iter().map(|r| r.iter().map(Coefficient::render).collect()).collect())
                    .collect()
            }),
        }
    }

    /// Builds and fully validates the algebra; non-antisymmetric tables,
    /// Jacobi failures, and inconsistent matrices are rejected.
    pub fn build<F: Coefficient>(&self) -> Result<LieAlgebra<F>> {
        let labels = match &self.labels {
            Some(l) if l.len() != self.dim => {
                return Err(Error::Parse(format!("{} labels for dim {}", l.len(), self.dim)));
            }
            Some(l) => l.clone(),
            None => (0..self.dim).map(|a| format!("e{a}")).collect(),
        };
        let entries = self
            .entries
            .iter()
            .map(|(a, b, c, v)| Ok((*a, *b, *c, parse_value::<F>(v)?)))
            .collect::<Result<Vec<_>>>()?;
        let matrices = match &self.matrices {
            None => None,
            Some(ms) => Some(
                ms.iter()
                    .map(|rows| {
                        let rows = rows
                            .iter()
                            .map(|r| r.iter().map(|s| parse_value::<F>(s)).collect::<Result<Vec<_>>>())
                            .collect::<Result<Vec<_>>>()?;
                        SquareMatrix::from_rows(rows)
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        let name = self.name.clone().unwrap_or_else(|| "custom".to_string());
        LieAlgebra::from_entries(name, labels, entries, matrices)
    }
}
