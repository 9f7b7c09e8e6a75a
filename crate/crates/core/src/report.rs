//! Serializable records for verdicts and flow runs.
//!
//! Rationals are written as `p/q` strings and indices are 1-based. Records
//! parse back into equal values, so emitting a parsed record reproduces the
//! original text byte for byte.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::catalog::format_assignment;
use crate::error::{Error, Result};
use crate::exact_math::rational::format_vector;
use crate::exact_math::Rational;
use crate::nikolayevsky::{Certificate, EnReport};
use crate::soliton::SolitonReport;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CertificateRecord {
    NonPositiveEigenvalue { index: usize, value: String },
    Inconsistent { combination: Vec<String> },
    ConstantCoordinate { coordinate: usize, value: String },
    Farkas { multipliers: Vec<String> },
}

impl CertificateRecord {
    pub fn from_certificate(c: &Certificate) -> Self {
        match c {
            Certificate::NonPositiveEigenvalue { index, value } => CertificateRecord::NonPositiveEigenvalue {
                index: index + 1,
                value: value.to_string(),
            },
            Certificate::Inconsistent { combination } => CertificateRecord::Inconsistent {
                combination: format_vector(combination),
            },
            Certificate::ConstantCoordinate { index, value } => CertificateRecord::ConstantCoordinate {
                coordinate: index + 1,
                value: value.to_string(),
            },
            Certificate::Farkas { multipliers } => CertificateRecord::Farkas {
                multipliers: format_vector(multipliers),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictRecord {
    pub algebra: String,
    pub params: BTreeMap<String, String>,
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub eigenvalues: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigenvalue_type: Option<String>,
    pub roots: Vec<[usize; 3]>,
    #[serde(rename = "U")]
    pub u: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate_text: Option<String>,
}

impl VerdictRecord {
    pub fn new(algebra: &str, params: &BTreeMap<String, Rational>, report: &EnReport) -> Self {
        let v = &report.verdict;
        VerdictRecord {
            algebra: algebra.to_string(),
            params: params.iter().map(|(k, x)| (k.clone(), x.to_string())).collect(),
            status: v.status.to_string(),
            reason: v.reason.clone(),
            eigenvalues: format_vector(&report.pre_einstein.eigenvalues),
            eigenvalue_type: report
                .pre_einstein
                .eigenvalue_type
                .as_ref()
                .map(ToString::to_string),
            roots: report
                .roots
                .roots
                .iter()
                .map(|&(i, j, k)| [i + 1, j + 1, k + 1])
                .collect(),
            u: report.gram.to_rows().iter().map(|r| format_vector(r)).collect(),
            witness: v.witness.as_deref().map(format_vector),
            certificate: v.certificate.as_ref().map(CertificateRecord::from_certificate),
            certificate_text: v.certificate.as_ref().map(ToString::to_string),
        }
    }

    /// `name` or `name[p=v,...]`.
    pub fn title(&self) -> String {
        if self.params.is_empty() {
            self.algebra.clone()
        } else {
            let p: BTreeMap<String, Rational> = self
                .params
                .iter()
                .filter_map(|(k, v)| v.parse().ok().map(|x| (k.clone(), x)))
                .collect();
            format!("{}[{}]", self.algebra, format_assignment(&p))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlowRecord {
    pub algebra: String,
    pub params: BTreeMap<String, String>,
    pub converged: bool,
    pub iterations: usize,
    pub c: f64,
    pub phi_diag: Vec<f64>,
    pub residual: f64,
    pub derivation_residual: f64,
    pub functional: f64,
    pub gradient_norm: f64,
    pub log_scales: Vec<f64>,
}

impl FlowRecord {
    pub fn new(algebra: &str, params: &BTreeMap<String, Rational>, r: &SolitonReport) -> Self {
        FlowRecord {
            algebra: algebra.to_string(),
            params: params.iter().map(|(k, x)| (k.clone(), x.to_string())).collect(),
            converged: r.converged,
            iterations: r.iterations,
            c: r.c,
            phi_diag: r.phi_diag.clone(),
            residual: r.residual,
            derivation_residual: r.derivation_residual,
            functional: r.functional,
            gradient_norm: r.gradient_norm,
            log_scales: r.log_scales.clone(),
        }
    }
}

/// Envelope shared by every structured output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Report {
    EnTest(VerdictRecord),
    Flow(FlowRecord),
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("records serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Report> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("malformed report: {e}")))
    }
}
