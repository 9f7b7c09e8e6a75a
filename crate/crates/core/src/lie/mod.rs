//! Nilpotent Lie algebras given by (possibly parametric) structure constants.
//!
//! Indices are 0-based throughout the API. The interchange format and all
//! human-facing output use the conventional 1-based `e₁ … eₙ` numbering.

mod interchange;
mod jacobi;
mod ops;

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact_math::{PolyQ, QMatrix, Rational};

pub use interchange::{AlgebraDoc, BracketDoc};
pub use jacobi::{jacobi_residuals, JacobiResidual};
pub use ops::{
    act, ad, central_series_bases, default_samples, descending_central_series, is_filiform, quotient,
    rank_profile, BaseChange,
};

/// Structure constants `[e_i, e_j] = Σ_k c_ij^k e_k`, stored for `i < j` only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    dim: usize,
    params: Vec<String>,
    brackets: BTreeMap<(usize, usize), BTreeMap<usize, PolyQ>>,
}

impl LieAlgebra {
    /// The abelian algebra of the given dimension.
    pub fn new(name: impl Into<String>, dim: usize) -> Self {
        LieAlgebra {
            name: name.into(),
            dim,
            params: Vec::new(),
            brackets: BTreeMap::new(),
        }
    }

    pub fn with_params<S: Into<String>>(mut self, params: impl IntoIterator<Item = S>) -> Self {
        self.params = params.into_iter().map(Into::into).collect();
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Builder form of [`LieAlgebra::set`]; panics on bad indices.
    pub fn with_bracket(mut self, i: usize, j: usize, k: usize, c: impl Into<PolyQ>) -> Self {
        self.set(i, j, k, c.into()).expect("valid bracket");
        self
    }

    /// Sets the coefficient of `e_k` in `[e_i, e_j]`. Either order of `i, j`
    /// is accepted; the swapped order stores the negation. A zero coefficient
    /// removes the entry.
    pub fn set(&mut self, i: usize, j: usize, k: usize, c: PolyQ) -> Result<()> {
        let n = self.dim;
        if i >= n || j >= n || k >= n {
            return Err(Error::IndexOutOfRange(format!(
                "bracket ({i},{j})->{k} in dimension {n}"
            )));
        }
        if i == j {
            return if c.is_zero() {
                Ok(())
            } else {
                Err(Error::IndexOutOfRange(format!("[e_{i}, e_{i}] must vanish")))
            };
        }
        let (key, c) = if i < j { ((i, j), c) } else { ((j, i), -c) };
        let slot = self.brackets.entry(key).or_default();
        if c.is_zero() {
            slot.remove(&k);
        } else {
            slot.insert(k, c);
        }
        if slot.is_empty() {
            self.brackets.remove(&key);
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    /// Coefficient of `e_k` in `[e_i, e_j]`, for either order of `i, j`.
    pub fn coeff(&self, i: usize, j: usize, k: usize) -> PolyQ {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => PolyQ::zero(),
            Less => self
                .brackets
                .get(&(i, j))
                .and_then(|m| m.get(&k))
                .cloned()
                .unwrap_or_default(),
            Greater => -self.coeff(j, i, k),
        }
    }

    /// `[e_i, e_j]` as a sparse map `k -> c_ij^k`, for either order.
    pub fn bracket_basis(&self, i: usize, j: usize) -> BTreeMap<usize, PolyQ> {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => BTreeMap::new(),
            Less => self.brackets.get(&(i, j)).cloned().unwrap_or_default(),
            Greater => self
                .brackets
                .get(&(j, i))
                .map(|m| m.iter().map(|(k, c)| (*k, -c)).collect())
                .unwrap_or_default(),
        }
    }

    /// Nonzero entries `(i, j, k, c)` with `i < j`, in lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &PolyQ)> {
        self.brackets
            .iter()
            .flat_map(|(&(i, j), m)| m.iter().map(move |(&k, c)| (i, j, k, c)))
    }

    pub fn is_grounded(&self) -> bool {
        self.params.is_empty() && self.entries().all(|(_, _, _, c)| c.as_constant().is_some())
    }

    /// Evaluate every parameter. The assignment must cover exactly the
    /// declared parameters.
    pub fn ground(&self, assignment: &BTreeMap<String, Rational>) -> Result<LieAlgebra> {
        for p in &self.params {
            if !assignment.contains_key(p) {
                return Err(Error::MissingParameter(p.clone()));
            }
        }
        if let Some(extra) = assignment.keys().find(|k| !self.params.contains(k)) {
            return Err(Error::UnexpectedParameter(extra.clone()));
        }
        let mut out = LieAlgebra::new(self.name.clone(), self.dim);
        for (i, j, k, c) in self.entries() {
            let v = c.eval(assignment)?;
            out.set(i, j, k, PolyQ::constant(v))?;
        }
        Ok(out)
    }

    /// Rational structure constants; fails while parameters are free.
    pub fn constants(&self) -> Result<Constants> {
        if !self.params.is_empty() {
            return Err(Error::FreeParameters(self.params.join(", ")));
        }
        let mut entries = Vec::new();
        for (i, j, k, c) in self.entries() {
            let v = c
                .as_constant()
                .ok_or_else(|| Error::FreeParameters(c.variables().join(", ")))?;
            entries.push((i, j, k, v));
        }
        Ok(Constants {
            dim: self.dim,
            entries,
        })
    }
}

/// Grounded structure constants in sparse form.
#[derive(Clone, Debug)]
pub struct Constants {
    dim: usize,
    entries: Vec<(usize, usize, usize, Rational)>,
}

impl Constants {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `(i, j, k, c)` with `i < j` and `c ≠ 0`.
    pub fn entries(&self) -> &[(usize, usize, usize, Rational)] {
        &self.entries
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (i, j, k, c) in &self.entries {
            let w = &x[*i] * &y[*j] - &x[*j] * &y[*i];
            if !w.is_zero() {
                out[*k] += w * c;
            }
        }
        out
    }

    /// Dense table `t[i][j][k]` including both orders.
    pub fn dense(&self) -> Vec<Vec<Vec<Rational>>> {
        let n = self.dim;
        let mut t = vec![vec![vec![Rational::zero(); n]; n]; n];
        for (i, j, k, c) in &self.entries {
            t[*i][*j][*k] = c.clone();
            t[*j][*i][*k] = -c.clone();
        }
        t
    }

    pub fn unit(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        v[i] = num_traits::One::one();
        v
    }

    /// Matrix of `y ↦ [x, y]`.
    pub fn ad(&self, x: &[Rational]) -> QMatrix {
        let n = self.dim;
        let mut m = QMatrix::zeros(n, n);
        for b in 0..n {
            let col = self.bracket(x, &self.unit(b));
            for (a, v) in col.into_iter().enumerate() {
                m[(a, b)] = v;
            }
        }
        m
    }
}
