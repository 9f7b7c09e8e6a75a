//! Floating-point search for nilsoliton metrics among diagonal metrics.
//!
//! A state rescales each basis vector `e_i` by `exp(s_i)` and keeps the
//! rescaled basis orthonormal, so the structure constants become
//! `c_ij^k · exp(s_i + s_j − s_k)`. A soliton is reached when the Ricci
//! operator has the form `c I + φ` with `φ` a diagonal derivation.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::exact_math::rational::to_f64;
use crate::lie::LieAlgebra;

#[derive(Clone, Debug, PartialEq)]
pub struct MetricState {
    algebra: LieAlgebra,
    /// `(i, j, k, c_ij^k)` with `i < j`.
    entries: Vec<(usize, usize, usize, f64)>,
    pub log_scales: Vec<f64>,
}

impl MetricState {
    /// Unit scales.
    pub fn new(alg: &LieAlgebra) -> Result<Self> {
        let entries = alg
            .constants()?
            .entries()
            .iter()
            .map(|(i, j, k, c)| (*i, *j, *k, to_f64(c)))
            .collect();
        Ok(MetricState {
            algebra: alg.clone(),
            entries,
            log_scales: vec![0.0; alg.dim()],
        })
    }

    pub fn with_scales(alg: &LieAlgebra, log_scales: Vec<f64>) -> Result<Self> {
        if log_scales.len() != alg.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} scales for dimension {}",
                log_scales.len(),
                alg.dim()
            )));
        }
        if let Some(pos) = log_scales.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite(pos));
        }
        let mut s = Self::new(alg)?;
        s.log_scales = log_scales;
        Ok(s)
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.log_scales.len()
    }

    /// Rescaled constants `(i, j, k, ĉ)` with `i < j`.
    pub fn scaled_entries(&self) -> Vec<(usize, usize, usize, f64)> {
        let s = &self.log_scales;
        self.entries
            .iter()
            .map(|&(i, j, k, c)| (i, j, k, c * (s[i] + s[j] - s[k]).exp()))
            .collect()
    }

    fn shifted(&self, axis: usize, h: f64) -> MetricState {
        let mut out = self.clone();
        out.log_scales[axis] += h;
        out
    }
}

/// `⟨Ric X, Y⟩ = −½ Σ_i ⟨[X,e_i],[Y,e_i]⟩ + ¼ Σ_ij ⟨[e_i,e_j],X⟩⟨[e_i,e_j],Y⟩`
/// in the rescaled orthonormal basis.
pub fn ricci(state: &MetricState) -> DMatrix<f64> {
    let n = state.dim();
    let mut t = vec![0.0; n * n * n];
    let idx = |i: usize, j: usize, k: usize| (i * n + j) * n + k;
    for (i, j, k, c) in state.scaled_entries() {
        t[idx(i, j, k)] = c;
        t[idx(j, i, k)] = -c;
    }
    let mut ric = DMatrix::zeros(n, n);
    for a in 0..n {
        for b in a..n {
            let mut v = 0.0;
            for i in 0..n {
                for k in 0..n {
                    v -= 0.5 * t[idx(a, i, k)] * t[idx(b, i, k)];
                }
            }
            for i in 0..n {
                for j in 0..n {
                    v += 0.25 * t[idx(i, j, a)] * t[idx(i, j, b)];
                }
            }
            ric[(a, b)] = v;
            ric[(b, a)] = v;
        }
    }
    ric
}

/// `−¼ Σ_ij ‖[e_i,e_j]‖²` over ordered pairs; equals `tr Ric`.
pub fn scalar_curvature(state: &MetricState) -> f64 {
    -0.5 * state.scaled_entries().iter().map(|e| e.3 * e.3).sum::<f64>()
}

/// `F = tr(Ric²) / tr(Ric)²`; NaN for the abelian algebra.
pub fn functional(state: &MetricState) -> f64 {
    let r = ricci(state);
    let tr = r.trace();
    (&r * &r).trace() / (tr * tr)
}

/// Central-difference gradient of [`functional`] in the log-scales.
pub fn gradient(state: &MetricState, h: f64) -> Vec<f64> {
    (0..state.dim())
        .map(|a| (functional(&state.shifted(a, h)) - functional(&state.shifted(a, -h))) / (2.0 * h))
        .collect()
}

pub const DEFAULT_FD_STEP: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct SolitonReport {
    pub c: f64,
    pub phi_diag: Vec<f64>,
    /// Operator norm of `Ric − cI − φ`, relative to that of `Ric`.
    pub residual: f64,
    /// `max |φ_k − φ_i − φ_j|` over nonzero brackets, relative to `max |φ|`.
    pub derivation_residual: f64,
    pub converged: bool,
    pub iterations: usize,
    pub functional: f64,
    /// Norm of the finite-difference gradient of `F` at the final state.
    pub gradient_norm: f64,
    pub log_scales: Vec<f64>,
}

impl SolitonReport {
    /// `φ / max φ`, for comparison with exact eigenvalues.
    pub fn normalized_phi(&self) -> Vec<f64> {
        let m = self.phi_diag.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        self.phi_diag.iter().map(|x| x / m).collect()
    }
}

fn operator_norm(m: DMatrix<f64>) -> f64 {
    SymmetricEigen::new(m)
        .eigenvalues
        .iter()
        .fold(0.0, |acc: f64, x| acc.max(x.abs()))
}

/// Fits `Ric ≈ c I + φ` with `φ` diagonal and checks that `φ` is a
/// derivation; no iteration.
pub fn verify_soliton(state: &MetricState, tol: f64) -> SolitonReport {
    let n = state.dim();
    let ric = ricci(state);
    let diag: Vec<f64> = (0..n).map(|i| ric[(i, i)]).collect();
    let roots: Vec<(usize, usize, usize)> = state.entries.iter().map(|e| (e.0, e.1, e.2)).collect();

    // φ = diag(Ric) − c; c is the least-squares solution of the derivation
    // identities φ_k = φ_i + φ_j.
    let c = if roots.is_empty() {
        0.0
    } else {
        roots
            .iter()
            .map(|&(i, j, k)| diag[i] + diag[j] - diag[k])
            .sum::<f64>()
            / roots.len() as f64
    };
    let phi: Vec<f64> = if roots.is_empty() {
        vec![0.0; n]
    } else {
        diag.iter().map(|d| d - c).collect()
    };

    let mut off = ric.clone();
    for i in 0..n {
        off[(i, i)] -= c + phi[i];
    }
    let scale = operator_norm(ric);
    let residual = if scale > 0.0 {
        operator_norm(off) / scale
    } else {
        0.0
    };
    let phi_scale = phi.iter().fold(0.0, |a: f64, x| a.max(x.abs()));
    let derivation_residual = if phi_scale > 0.0 {
        roots
            .iter()
            .map(|&(i, j, k)| (phi[k] - phi[i] - phi[j]).abs())
            .fold(0.0, f64::max)
            / phi_scale
    } else {
        0.0
    };
    let (functional, gradient_norm) = if roots.is_empty() {
        (0.0, 0.0)
    } else {
        let g = gradient(state, DEFAULT_FD_STEP);
        (functional(state), g.iter().map(|x| x * x).sum::<f64>().sqrt())
    };
    SolitonReport {
        c,
        phi_diag: phi,
        residual,
        derivation_residual,
        converged: residual <= tol && derivation_residual <= tol,
        iterations: 0,
        functional,
        gradient_norm,
        log_scales: state.log_scales.clone(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlowMethod {
    /// Normalized bracket flow on the diagonal: rescale so `tr Ric = −½`,
    /// then move `s` along `diag(Ric) − (tr Ric² / tr Ric)·1`.
    Bracket,
    /// Plain descent `s ← s − step · ∇F` with a central-difference gradient.
    Gradient,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FlowOptions {
    pub max_iter: usize,
    pub step: f64,
    pub tol: f64,
    pub method: FlowMethod,
}

impl Default for FlowOptions {
    fn default() -> Self {
        FlowOptions {
            max_iter: 50_000,
            step: 1.0,
            tol: 1e-8,
            method: FlowMethod::Bracket,
        }
    }
}

/// Runs from unit scales with the default method.
pub fn flow(alg: &LieAlgebra, max_iter: usize, step: f64, tol: f64) -> Result<SolitonReport> {
    flow_with(
        alg,
        &FlowOptions {
            max_iter,
            step,
            tol,
            method: FlowMethod::Bracket,
        },
    )
}

fn check_finite(v: &[f64], iter: usize) -> Result<()> {
    if v.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite(iter))
    }
}

pub fn flow_with(alg: &LieAlgebra, opts: &FlowOptions) -> Result<SolitonReport> {
    crate::lie::descending_central_series(alg)?;
    let mut state = MetricState::new(alg)?;
    if state.entries.is_empty() {
        return Ok(verify_soliton(&state, opts.tol));
    }
    let n = state.dim();
    let mut iterations = 0;
    loop {
        if opts.method == FlowMethod::Bracket {
            let scal = scalar_curvature(&state);
            let shift = 0.5 * (-0.5 / scal).ln();
            for s in state.log_scales.iter_mut() {
                *s += shift;
            }
        }
        check_finite(&state.log_scales, iterations)?;
        if is_converged(&state, opts.tol) || iterations >= opts.max_iter {
            break;
        }
        match opts.method {
            FlowMethod::Bracket => {
                let ric = ricci(&state);
                let tr = ric.trace();
                let r = (&ric * &ric).trace() / tr;
                for a in 0..n {
                    state.log_scales[a] += opts.step * (ric[(a, a)] - r);
                }
            }
            FlowMethod::Gradient => {
                let g = gradient(&state, DEFAULT_FD_STEP);
                check_finite(&g, iterations)?;
                for (s, d) in state.log_scales.iter_mut().zip(g) {
                    *s -= opts.step * d;
                }
            }
        }
        iterations += 1;
    }
    let mut report = verify_soliton(&state, opts.tol);
    check_finite(&report.phi_diag, iterations)?;
    report.iterations = iterations;
    Ok(report)
}

/// The convergence test of [`verify_soliton`] without the gradient diagnostic.
fn is_converged(state: &MetricState, tol: f64) -> bool {
    let n = state.dim();
    let ric = ricci(state);
    let diag: Vec<f64> = (0..n).map(|i| ric[(i, i)]).collect();
    let m = state.entries.len() as f64;
    let c = state
        .entries
        .iter()
        .map(|&(i, j, k, _)| diag[i] + diag[j] - diag[k])
        .sum::<f64>()
        / m;
    let phi_scale = diag.iter().fold(0.0, |a: f64, d| a.max((d - c).abs()));
    let der = state
        .entries
        .iter()
        .map(|&(i, j, k, _)| (diag[k] - diag[i] - diag[j] + c).abs())
        .fold(0.0, f64::max);
    if der.is_nan() || der > tol * phi_scale {
        return false;
    }
    let mut off = ric.clone();
    for i in 0..n {
        off[(i, i)] = 0.0;
    }
    operator_norm(off) <= tol * operator_norm(ric)
}
