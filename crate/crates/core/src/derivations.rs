//! Derivation algebras and the pre-Einstein derivation.
//!
//! The pre-Einstein derivation is solved for over the diagonal derivations of
//! the given basis and then checked against the full derivation algebra, so a
//! basis that is not adapted fails loudly instead of producing a wrong answer.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_math::rational::{denominator_lcm, numerator_gcd};
use crate::exact_math::{dot, nullspace, solve_affine, AffineSolution, QMatrix, Rational};
use crate::lie::LieAlgebra;

/// A basis of `Der(𝔫)` as `n×n` matrices; column `c` is the image of `e_c`.
#[derive(Clone, Debug)]
pub struct DerivationSpace {
    pub basis: Vec<QMatrix>,
}

impl DerivationSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn unknown(n: usize, row: usize, col: usize) -> usize {
    row * n + col
}

/// Solves `D[e_i,e_j] = [De_i,e_j] + [e_i,De_j]` for all `i < j` over the
/// `n²` entries of `D`.
pub fn derivation_space(alg: &LieAlgebra) -> Result<DerivationSpace> {
    let c = alg.constants()?;
    let n = alg.dim();
    let t = c.dense();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for m in 0..n {
                let mut row = vec![Rational::zero(); n * n];
                for k in 0..n {
                    if !t[i][j][k].is_zero() {
                        row[unknown(n, m, k)] += &t[i][j][k];
                    }
                }
                for l in 0..n {
                    if !t[l][j][m].is_zero() {
                        row[unknown(n, l, i)] -= &t[l][j][m];
                    }
                    if !t[i][l][m].is_zero() {
                        row[unknown(n, l, j)] -= &t[i][l][m];
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let basis = if rows.is_empty() {
        (0..n * n).map(|u| unit_vector(n * n, u)).collect()
    } else {
        nullspace(&QMatrix::from_rows(rows)?)
    };
    Ok(DerivationSpace {
        basis: basis
            .into_iter()
            .map(|v| QMatrix::from_rows(v.chunks(n).map(<[Rational]>::to_vec).collect()).expect("square"))
            .collect(),
    })
}

fn unit_vector(len: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); len];
    v[i] = Rational::one();
    v
}

/// True when `d` satisfies the derivation identity on all basis pairs.
pub fn is_derivation(alg: &LieAlgebra, d: &QMatrix) -> Result<bool> {
    let c = alg.constants()?;
    let n = alg.dim();
    if d.rows() != n || d.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} in dimension {n}",
            d.rows(),
            d.cols()
        )));
    }
    for i in 0..n {
        for j in i + 1..n {
            let (ei, ej) = (c.unit(i), c.unit(j));
            let lhs = d.mul_vec(&c.bracket(&ei, &ej))?;
            let a = c.bracket(&d.column(i), &ej);
            let b = c.bracket(&ei, &d.column(j));
            if lhs.iter().zip(a.iter().zip(&b)).any(|(l, (x, y))| *l != x + y) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Diagonal derivations `diag(d)`: `c_ij^k (d_k − d_i − d_j) = 0`.
pub fn diagonal_derivations(alg: &LieAlgebra) -> Result<Vec<Vec<Rational>>> {
    let c = alg.constants()?;
    let n = alg.dim();
    let rows: Vec<Vec<Rational>> = c
        .entries()
        .iter()
        .map(|(i, j, k, _)| {
            let mut row = vec![Rational::zero(); n];
            row[*k] += Rational::one();
            row[*i] -= Rational::one();
            row[*j] -= Rational::one();
            row
        })
        .collect();
    if rows.is_empty() {
        return Ok((0..n).map(|i| unit_vector(n, i)).collect());
    }
    Ok(nullspace(&QMatrix::from_rows(rows)?))
}

/// Positive coprime integers with multiplicities, sorted increasingly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenvalueType(pub Vec<(BigInt, usize)>);

impl EigenvalueType {
    pub fn from_ints(values: &[(i64, usize)]) -> Self {
        EigenvalueType(values.iter().map(|&(k, d)| (BigInt::from(k), d)).collect())
    }

    /// Ascending values, `1<3<4` style.
    pub fn simple(values: &[i64]) -> Self {
        EigenvalueType(values.iter().map(|&k| (BigInt::from(k), 1)).collect())
    }
}

impl fmt::Display for EigenvalueType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(k, d)| {
                if *d == 1 {
                    k.to_string()
                } else {
                    format!("{k}[{d}]")
                }
            })
            .collect();
        f.write_str(&parts.join("<"))
    }
}

/// Scale by a positive rational so that all values become coprime positive
/// integers; `None` unless every value is positive.
pub fn eigenvalue_type(eigs: &[Rational]) -> Option<EigenvalueType> {
    if eigs.is_empty() || eigs.iter().any(|x| !x.is_positive()) {
        return None;
    }
    let lcm = Rational::from_integer(denominator_lcm(eigs));
    let scaled: Vec<Rational> = eigs.iter().map(|x| x * &lcm).collect();
    let g = Rational::from_integer(numerator_gcd(&scaled));
    let mut ints: Vec<BigInt> = scaled.iter().map(|x| (x / &g).to_integer()).collect();
    ints.sort();
    let mut out: Vec<(BigInt, usize)> = Vec::new();
    for k in ints {
        match out.last_mut() {
            Some((last, d)) if *last == k => *d += 1,
            _ => out.push((k, 1)),
        }
    }
    Some(EigenvalueType(out))
}

#[derive(Clone, Debug)]
pub struct PreEinsteinResult {
    pub phi: QMatrix,
    /// Diagonal of `phi` in basis order.
    pub eigenvalues: Vec<Rational>,
    pub simple: bool,
    pub positive: bool,
    pub eigenvalue_type: Option<EigenvalueType>,
    /// Dimension of the full derivation algebra the identity was checked on.
    pub derivation_dim: usize,
}

/// The diagonal pre-Einstein derivation `φ` with `tr(φψ) = tr ψ` for every
/// derivation `ψ`.
pub fn pre_einstein(alg: &LieAlgebra) -> Result<PreEinsteinResult> {
    let n = alg.dim();
    let diag = diagonal_derivations(alg)?;
    if diag.is_empty() {
        return Err(Error::NoDiagonalDerivations);
    }
    // Gram system of the trace form on the diagonal derivations.
    let r = diag.len();
    let mut gram = QMatrix::zeros(r, r);
    for a in 0..r {
        for b in 0..r {
            gram[(a, b)] = dot(&diag[a], &diag[b]);
        }
    }
    let traces: Vec<Rational> = diag.iter().map(|d| d.iter().sum()).collect();
    let coeffs = match solve_affine(&gram, &traces)? {
        AffineSolution::Family(f) if f.basis.is_empty() => f.particular,
        AffineSolution::Family(f) => {
            return Err(Error::Invariant(format!(
                "trace form on diagonal derivations is degenerate ({} free directions)",
                f.basis.len()
            )))
        }
        AffineSolution::Inconsistent { .. } => {
            return Err(Error::Invariant("trace-form system is inconsistent".into()))
        }
    };
    let mut eigenvalues = vec![Rational::zero(); n];
    for (a, d) in coeffs.iter().zip(&diag) {
        for (e, x) in eigenvalues.iter_mut().zip(d) {
            *e += a * x;
        }
    }
    let phi = QMatrix::diagonal(&eigenvalues);

    let der = derivation_space(alg)?;
    for (idx, psi) in der.basis.iter().enumerate() {
        let lhs: Rational = eigenvalues
            .iter()
            .enumerate()
            .map(|(k, e)| e * &psi[(k, k)])
            .sum();
        if lhs != psi.trace() {
            return Err(Error::VerificationFailed(format!(
                "derivation basis element {idx} (tr(φψ) = {lhs}, tr ψ = {})",
                psi.trace()
            )));
        }
    }
    if !is_derivation(alg, &phi)? {
        return Err(Error::Invariant(
            "pre-Einstein candidate is not a derivation".into(),
        ));
    }

    let mut sorted = eigenvalues.clone();
    sorted.sort();
    let simple = sorted.windows(2).all(|w| w[0] != w[1]);
    let positive = eigenvalues.iter().all(Signed::is_positive);
    let eigenvalue_type = if positive {
        eigenvalue_type(&eigenvalues)
    } else {
        None
    };
    Ok(PreEinsteinResult {
        phi,
        eigenvalues,
        simple,
        positive,
        eigenvalue_type,
        derivation_dim: der.dim(),
    })
}
