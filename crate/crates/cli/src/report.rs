//! Serializable results of `compute` and `verify`.

use std::collections::BTreeMap;

use lefschetz_core::{LPolynomial, LooseGraph, SurgeryTrace, ZetaF1};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphMeta {
    pub vertices: usize,
    /// Full edges plus loose edges.
    pub edges: usize,
    pub loose_edges: usize,
    pub connected: bool,
}

impl GraphMeta {
    pub fn of(g: &LooseGraph) -> Self {
        Self {
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            loose_edges: g.loose_edge_count() + g.free_loose_count(),
            connected: g.is_connected(),
        }
    }
}

/// One factor `(t - root)^(-multiplicity)` of the F1-zeta function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaFactor {
    pub root: usize,
    pub multiplicity: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgeryStepReport {
    pub edge: String,
    pub ball: Vec<String>,
    /// Ascending coefficients of the class difference.
    pub difference: Vec<i64>,
}

/// Surgery on one connected piece.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgeryReport {
    pub spanning_tree: Vec<String>,
    pub steps: Vec<SurgeryStepReport>,
    pub tree_polynomial: Vec<i64>,
}

impl SurgeryReport {
    pub fn from_trace(t: &SurgeryTrace) -> Result<Self, CliError> {
        Ok(Self {
            spanning_tree: t.spanning_tree.iter().map(ToString::to_string).collect(),
            steps: t
                .steps
                .iter()
                .map(|s| {
                    Ok(SurgeryStepReport {
                        edge: s.edge.to_string(),
                        ball: s.ball.iter().cloned().collect(),
                        difference: coefficients(&s.difference)?,
                    })
                })
                .collect::<Result<_, CliError>>()?,
            tree_polynomial: coefficients(&t.tree_polynomial)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub graph: GraphMeta,
    /// Ascending coefficients of the class in `L`.
    pub polynomial: Vec<i64>,
    pub euler_characteristic: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zeta: Option<Vec<ZetaFactor>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zeta_rendered: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arithmetic_zeta: Option<String>,
    /// `q ↦ N(q)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counts: Option<BTreeMap<u64, i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surgery_trace: Option<Vec<SurgeryReport>>,
    /// Cross-check name ↦ agreement with the inclusion–exclusion class.
    pub verdicts: BTreeMap<String, bool>,
}

impl Report {
    pub fn polynomial(&self) -> LPolynomial {
        LPolynomial::from_i64s(&self.polynomial)
    }
}

pub fn coefficients(p: &LPolynomial) -> Result<Vec<i64>, CliError> {
    p.coeffs().iter().map(to_i64).collect()
}

pub fn to_i64(c: &BigInt) -> Result<i64, CliError> {
    i64::try_from(c).map_err(|_| CliError::Overflow(c.to_string()))
}

pub fn zeta_factors(z: &ZetaF1) -> Result<Vec<ZetaFactor>, CliError> {
    z.exponents()
        .iter()
        .map(|(&root, a)| {
            Ok(ZetaFactor {
                root,
                multiplicity: to_i64(a)?,
            })
        })
        .collect()
}

/// One disagreement found by `verify`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub graph: String,
    pub check: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skipped {
    pub graph: String,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checked: usize,
    pub skipped: Vec<Skipped>,
    pub failures: Vec<Failure>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}
