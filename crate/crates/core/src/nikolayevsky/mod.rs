//! The Einstein-nilradical test.
//!
//! For a nilpotent algebra with simple positive pre-Einstein eigenvalues, the
//! root vectors `α = f_k − f_i − f_j` of the nonzero structure constants form
//! the columns of `Y`; the algebra is an Einstein nilradical iff `U v = [1]`
//! has a solution with every coordinate positive, where `U = YᵗY`.

mod feasibility;
pub mod simplex;

use std::fmt;

use num_traits::{One, Signed, Zero};

pub use feasibility::{positive_feasible, Feasibility, Infeasibility};

use crate::derivations::{pre_einstein, PreEinsteinResult};
use crate::error::{Error, Result};
use crate::exact_math::{dot, solve_affine, AffineSolution, QMatrix, Rational, SolutionFamily};
use crate::lie::{descending_central_series, jacobi_residuals, LieAlgebra};

/// Roots `(i, j, k)` with `i < j` and `c_ij^k ≠ 0`, 0-based, in
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSet {
    pub n: usize,
    pub roots: Vec<(usize, usize, usize)>,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// `f_k − f_i − f_j` as an integer vector.
    pub fn vector(&self, a: usize) -> Vec<i64> {
        let (i, j, k) = self.roots[a];
        let mut v = vec![0; self.n];
        v[i] -= 1;
        v[j] -= 1;
        v[k] += 1;
        v
    }

    /// `n × N` matrix whose columns are the root vectors.
    pub fn y_matrix(&self) -> QMatrix {
        let mut y = QMatrix::zeros(self.n, self.len());
        for a in 0..self.len() {
            for (r, x) in self.vector(a).into_iter().enumerate() {
                y[(r, a)] = Rational::from_integer(x.into());
            }
        }
        y
    }
}

pub fn root_set(alg: &LieAlgebra) -> Result<RootSet> {
    if !alg.is_grounded() {
        return Err(Error::FreeParameters(alg.params().join(", ")));
    }
    Ok(RootSet {
        n: alg.dim(),
        roots: alg.entries().map(|(i, j, k, _)| (i, j, k)).collect(),
    })
}

/// `U_ab = ⟨α_a, α_b⟩`.
pub fn gram(roots: &RootSet) -> QMatrix {
    let vecs: Vec<Vec<i64>> = (0..roots.len()).map(|a| roots.vector(a)).collect();
    let mut u = QMatrix::zeros(roots.len(), roots.len());
    for a in 0..vecs.len() {
        for b in 0..vecs.len() {
            let s: i64 = vecs[a].iter().zip(&vecs[b]).map(|(x, y)| x * y).sum();
            u[(a, b)] = Rational::from_integer(s.into());
        }
    }
    u
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Yes,
    No,
    NotApplicable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Yes => "Yes",
            Status::No => "No",
            Status::NotApplicable => "NotApplicable",
        })
    }
}

/// Checkable evidence for a negative verdict. Indices are 0-based; the
/// `Display` form is 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// The pre-Einstein derivation has eigenvalue `value ≤ 0` at `e_index`,
    /// so the algebra admits no positive gradation of the required kind.
    NonPositiveEigenvalue { index: usize, value: Rational },
    /// `yᵗU = 0` and `yᵗ[1] ≠ 0`.
    Inconsistent { combination: Vec<Rational> },
    /// Coordinate `index` of every solution equals `value ≤ 0`.
    ConstantCoordinate { index: usize, value: Rational },
    /// `y ≥ 0` combining solution coordinates into a constant `≤ 0`.
    Farkas { multipliers: Vec<Rational> },
}

impl From<Infeasibility> for Certificate {
    fn from(i: Infeasibility) -> Self {
        match i {
            Infeasibility::ConstantCoordinate { index, value } => {
                Certificate::ConstantCoordinate { index, value }
            }
            Infeasibility::Farkas { multipliers } => Certificate::Farkas { multipliers },
        }
    }
}

fn join(v: &[Rational]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::NonPositiveEigenvalue { index, value } => {
                write!(f, "pre-Einstein eigenvalue {} is {value}", index + 1)
            }
            Certificate::Inconsistent { combination } => {
                write!(
                    f,
                    "U v = [1] inconsistent: y = ({}) has yU = 0, y.1 != 0",
                    join(combination)
                )
            }
            Certificate::ConstantCoordinate { index, value } => {
                write!(f, "coordinate {} constant {value}", index + 1)
            }
            Certificate::Farkas { multipliers } => {
                write!(
                    f,
                    "nonnegative combination ({}) of coordinates is constant <= 0",
                    join(multipliers)
                )
            }
        }
    }
}

/// Reason recorded when `U v = [1]` is inconsistent; not expected for Gram
/// systems of genuine inputs.
pub const UNEXPECTED_INCONSISTENCY: &str = "unexpected: U v = [1] inconsistent";
pub const NOT_SIMPLE: &str = "eigenvalues not simple";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub witness: Option<Vec<Rational>>,
    pub certificate: Option<Certificate>,
    pub reason: Option<String>,
}

impl Verdict {
    fn yes(witness: Vec<Rational>) -> Self {
        Verdict {
            status: Status::Yes,
            witness: Some(witness),
            certificate: None,
            reason: None,
        }
    }

    fn no(certificate: Certificate) -> Self {
        Verdict {
            status: Status::No,
            witness: None,
            certificate: Some(certificate),
            reason: None,
        }
    }
}

/// Everything the test computed on the way to its verdict.
#[derive(Clone, Debug)]
pub struct EnReport {
    pub verdict: Verdict,
    pub pre_einstein: PreEinsteinResult,
    pub roots: RootSet,
    pub gram: QMatrix,
    /// Present when the Gram system was solved.
    pub family: Option<SolutionFamily>,
}

fn ones(n: usize) -> Vec<Rational> {
    vec![Rational::one(); n]
}

/// Checks that `fam` is exactly the solution set of `U v = [1]`.
fn family_is_solution_set(u: &QMatrix, fam: &SolutionFamily) -> Result<bool> {
    let n = u.rows();
    if u.mul_vec(&fam.particular)? != ones(n) {
        return Ok(false);
    }
    for b in &fam.basis {
        if u.mul_vec(b)?.iter().any(|x| !x.is_zero()) {
            return Ok(false);
        }
    }
    let spans_kernel = QMatrix::from_rows(fam.basis.clone())
        .map(|m| m.rank() == fam.basis.len())
        .unwrap_or(fam.basis.is_empty());
    Ok(spans_kernel && fam.basis.len() + u.rank() == n)
}

impl Certificate {
    /// Independent check of the certificate against the report's data.
    pub fn verify(&self, pre: &PreEinsteinResult, u: &QMatrix, fam: Option<&SolutionFamily>) -> Result<bool> {
        Ok(match self {
            Certificate::NonPositiveEigenvalue { index, value } => {
                pre.eigenvalues.get(*index) == Some(value) && !value.is_positive()
            }
            Certificate::Inconsistent { combination } => {
                combination.len() == u.rows()
                    && u.transpose().mul_vec(combination)?.iter().all(Zero::is_zero)
                    && !dot(combination, &ones(u.rows())).is_zero()
            }
            Certificate::ConstantCoordinate { index, value } => match fam {
                Some(f) => {
                    family_is_solution_set(u, f)?
                        && Infeasibility::ConstantCoordinate {
                            index: *index,
                            value: value.clone(),
                        }
                        .verify(f)
                }
                None => false,
            },
            Certificate::Farkas { multipliers } => match fam {
                Some(f) => {
                    family_is_solution_set(u, f)?
                        && Infeasibility::Farkas {
                            multipliers: multipliers.clone(),
                        }
                        .verify(f)
                }
                None => false,
            },
        })
    }
}

/// Decides whether a grounded nilpotent algebra is an Einstein nilradical.
pub fn en_test(alg: &LieAlgebra) -> Result<EnReport> {
    if !alg.is_grounded() {
        return Err(Error::FreeParameters(alg.params().join(", ")));
    }
    if let Some(r) = jacobi_residuals(alg).first() {
        return Err(Error::JacobiViolation(r.to_string()));
    }
    descending_central_series(alg)?;

    let pre = pre_einstein(alg)?;
    let roots = root_set(alg)?;
    let u = gram(&roots);
    let mut family = None;

    let verdict = if let Some(index) = pre.eigenvalues.iter().position(|e| !e.is_positive()) {
        Verdict::no(Certificate::NonPositiveEigenvalue {
            index,
            value: pre.eigenvalues[index].clone(),
        })
    } else if !pre.simple {
        Verdict {
            status: Status::NotApplicable,
            witness: None,
            certificate: None,
            reason: Some(NOT_SIMPLE.into()),
        }
    } else {
        match solve_affine(&u, &ones(roots.len()))? {
            AffineSolution::Inconsistent { combination } => {
                let mut v = Verdict::no(Certificate::Inconsistent { combination });
                v.reason = Some(UNEXPECTED_INCONSISTENCY.into());
                v
            }
            AffineSolution::Family(fam) => {
                let v = match positive_feasible(&fam) {
                    Feasibility::Witness { v, .. } => Verdict::yes(v),
                    Feasibility::Infeasible(c) => Verdict::no(c.into()),
                };
                family = Some(fam);
                v
            }
        }
    };

    match (&verdict.witness, &verdict.certificate) {
        (Some(w), _) => {
            let ok = u.mul_vec(w)? == ones(roots.len()) && w.iter().all(Signed::is_positive);
            if !ok {
                return Err(Error::Invariant("witness fails U v = [1], v > 0".into()));
            }
        }
        (None, Some(c)) => {
            if !c.verify(&pre, &u, family.as_ref())? {
                return Err(Error::Invariant(format!("certificate does not verify: {c}")));
            }
        }
        (None, None) => {}
    }

    Ok(EnReport {
        verdict,
        pre_einstein: pre,
        roots,
        gram: u,
        family,
    })
}
