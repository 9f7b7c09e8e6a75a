//! JSON interchange format for algebras.
//!
//! ```json
//! {
//!   "name": "h1_8",
//!   "dim": 8,
//!   "params": [],
//!   "brackets": [ { "i": 1, "j": 2, "k": 3, "c": "1" } ]
//! }
//! ```
//!
//! Indices are 1-based with `i < j`; `c` is a polynomial in the listed
//! parameters. Documents produced by [`LieAlgebra::to_json`] list brackets in
//! lexicographic `(i, j, k)` order, so produce → parse → produce is
//! byte-identical.

use serde::{Deserialize, Serialize};

use super::LieAlgebra;
use crate::error::{Error, Result};
use crate::exact_math::PolyQ;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub name: String,
    pub dim: usize,
    pub params: Vec<String>,
    pub brackets: Vec<BracketDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketDoc {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: String,
}

impl LieAlgebra {
    pub fn to_doc(&self) -> AlgebraDoc {
        AlgebraDoc {
            name: self.name.clone(),
            dim: self.dim,
            params: self.params.clone(),
            brackets: self
                .entries()
                .map(|(i, j, k, c)| BracketDoc {
                    i: i + 1,
                    j: j + 1,
                    k: k + 1,
                    c: c.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_doc(doc: &AlgebraDoc) -> Result<LieAlgebra> {
        let mut alg = LieAlgebra::new(doc.name.clone(), doc.dim).with_params(doc.params.clone());
        for b in &doc.brackets {
            if !(1 <= b.i && b.i < b.j && b.j <= doc.dim && 1 <= b.k && b.k <= doc.dim) {
                return Err(Error::Parse(format!(
                    "bracket indices ({}, {}) -> {} invalid in dimension {} (need 1 <= i < j <= dim)",
                    b.i, b.j, b.k, doc.dim
                )));
            }
            let c = PolyQ::parse(&b.c)?;
            if c.is_zero() {
                return Err(Error::Parse(format!(
                    "zero coefficient for ({}, {}) -> {}",
                    b.i, b.j, b.k
                )));
            }
            if let Some(v) = c.variables().into_iter().find(|v| !doc.params.contains(v)) {
                return Err(Error::Parse(format!("undeclared parameter `{v}` in `{}`", b.c)));
            }
            let (i, j, k) = (b.i - 1, b.j - 1, b.k - 1);
            if !alg.coeff(i, j, k).is_zero() {
                return Err(Error::Parse(format!(
                    "duplicate bracket ({}, {}) -> {}",
                    b.i, b.j, b.k
                )));
            }
            alg.set(i, j, k, c)?;
        }
        Ok(alg)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_doc()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<LieAlgebra> {
        let doc: AlgebraDoc = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("malformed algebra document: {e}")))?;
        Self::from_doc(&doc)
    }
}
