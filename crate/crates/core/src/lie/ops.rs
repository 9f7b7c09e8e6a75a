use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::LieAlgebra;
use crate::error::{Error, Result};
use crate::exact_math::{int, rref, PolyQ, QMatrix, Rational};

/// An invertible change of basis acting by `g.μ(X, Y) = g μ(g⁻¹X, g⁻¹Y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseChange {
    matrix: QMatrix,
    inverse: QMatrix,
}

impl BaseChange {
    pub fn new(matrix: QMatrix) -> Result<Self> {
        let inverse = matrix.inverse()?;
        Ok(BaseChange { matrix, inverse })
    }

    pub fn diagonal(entries: &[Rational]) -> Result<Self> {
        Self::new(QMatrix::diagonal(entries))
    }

    /// The permutation sending `e_i` to `e_{perm[i]}`.
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        let mut m = QMatrix::zeros(n, n);
        for (i, &p) in perm.iter().enumerate() {
            if p >= n {
                return Err(Error::IndexOutOfRange(format!("permutation target {p}")));
            }
            m[(p, i)] = Rational::one();
        }
        Self::new(m)
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn inverse(&self) -> BaseChange {
        BaseChange {
            matrix: self.inverse.clone(),
            inverse: self.matrix.clone(),
        }
    }

    /// `self · other`, acting as `other` first.
    pub fn compose(&self, other: &BaseChange) -> BaseChange {
        BaseChange {
            matrix: self.matrix.mul(&other.matrix).expect("square"),
            inverse: other.inverse.mul(&self.inverse).expect("square"),
        }
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        self.matrix.mul_vec(v).expect("dimension checked by caller")
    }
}

pub fn ad(alg: &LieAlgebra, x: &[Rational]) -> Result<QMatrix> {
    let c = alg.constants()?;
    check_len(x.len(), alg.dim())?;
    Ok(c.ad(x))
}

fn check_len(got: usize, want: usize) -> Result<()> {
    if got == want {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!(
            "vector of length {got} in dimension {want}"
        )))
    }
}

fn row_basis(vectors: Vec<Vec<Rational>>, n: usize) -> Vec<Vec<Rational>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = QMatrix::from_rows(vectors).expect("rectangular");
    let (r, pivots) = rref(&m);
    debug_assert_eq!(r.cols(), n);
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Bases of `C₀ ⊇ C₁ ⊇ … ⊇ C_L = 0` with `C_{i+1} = [𝔫, C_i]`.
pub fn central_series_bases(alg: &LieAlgebra) -> Result<Vec<Vec<Vec<Rational>>>> {
    let c = alg.constants()?;
    let n = alg.dim();
    let mut current: Vec<Vec<Rational>> = (0..n).map(|i| c.unit(i)).collect();
    let mut series = vec![current.clone()];
    while !current.is_empty() {
        let spanning: Vec<Vec<Rational>> = (0..n)
            .flat_map(|a| {
                let ea = c.unit(a);
                current
                    .iter()
                    .map(|v| c.bracket(&ea, v))
                    .filter(|w| w.iter().any(|x| !x.is_zero()))
                    .collect::<Vec<_>>()
            })
            .collect();
        let next = row_basis(spanning, n);
        if next.len() == current.len() {
            return Err(Error::NotNilpotent(next.len()));
        }
        series.push(next.clone());
        current = next;
    }
    Ok(series)
}

pub fn descending_central_series(alg: &LieAlgebra) -> Result<Vec<usize>> {
    Ok(central_series_bases(alg)?.iter().map(Vec::len).collect())
}

/// `(n−1)`-step nilpotent: dimensions `(n, n−2, n−3, …, 1, 0)`.
pub fn is_filiform(alg: &LieAlgebra) -> Result<bool> {
    let dims = descending_central_series(alg)?;
    let n = alg.dim();
    Ok(n >= 2 && dims.len() == n)
}

/// `g.μ`, computed exactly.
pub fn act(g: &BaseChange, alg: &LieAlgebra) -> Result<LieAlgebra> {
    let n = alg.dim();
    if g.matrix.rows() != n {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} base change in dimension {n}",
            g.matrix.rows(),
            g.matrix.cols()
        )));
    }
    let c = alg.constants()?;
    let cols: Vec<Vec<Rational>> = (0..n).map(|i| g.inverse.column(i)).collect();
    let mut out = LieAlgebra::new(alg.name(), n);
    for i in 0..n {
        for j in i + 1..n {
            let z = g.apply(&c.bracket(&cols[i], &cols[j]));
            for (k, v) in z.into_iter().enumerate() {
                if !v.is_zero() {
                    out.set(i, j, k, PolyQ::constant(v))?;
                }
            }
        }
    }
    Ok(out)
}

/// `𝔫 / C_j` in the induced basis: the classes of the basis vectors chosen
/// greedily (lowest index first) to complement `C_j`.
pub fn quotient(alg: &LieAlgebra, j: usize) -> Result<LieAlgebra> {
    let series = central_series_bases(alg)?;
    if j >= series.len() {
        return Err(Error::IndexOutOfRange(format!(
            "C_{j} for a series of length {}",
            series.len() - 1
        )));
    }
    let n = alg.dim();
    let c = alg.constants()?;
    let ideal = &series[j];

    let mut complement = Vec::new();
    let mut span = ideal.clone();
    for i in 0..n {
        if span.len() == n {
            break;
        }
        let mut trial = span.clone();
        trial.push(c.unit(i));
        let b = row_basis(trial, n);
        if b.len() > span.len() {
            complement.push(i);
            span = b;
        }
    }

    // Columns: complement unit vectors, then the ideal basis.
    let m = complement.len();
    let mut basis = QMatrix::zeros(n, n);
    for (col, &i) in complement.iter().enumerate() {
        basis[(i, col)] = Rational::one();
    }
    for (col, v) in ideal.iter().enumerate() {
        for (r, x) in v.iter().enumerate() {
            basis[(r, m + col)] = x.clone();
        }
    }
    let coords = basis.inverse()?;

    let mut out = LieAlgebra::new(format!("{}/C{}", alg.name(), j), m);
    for a in 0..m {
        for b in a + 1..m {
            let w = c.bracket(&c.unit(complement[a]), &c.unit(complement[b]));
            let x = coords.mul_vec(&w)?;
            for (k, v) in x.into_iter().take(m).enumerate() {
                if !v.is_zero() {
                    out.set(a, b, k, PolyQ::constant(v))?;
                }
            }
        }
    }
    Ok(out)
}

/// Tally of `rank ad_[x]` over the samples.
///
/// `j = 0` means the algebra itself; `j ≥ 1` works in `𝔫 / C_j` and the
/// samples are coordinates in the quotient's induced basis. Only ranks that
/// occur are witnessed; absence from the tally proves nothing.
pub fn rank_profile(alg: &LieAlgebra, j: usize, samples: &[Vec<Rational>]) -> Result<BTreeMap<usize, usize>> {
    let target = if j == 0 { alg.clone() } else { quotient(alg, j)? };
    let c = target.constants()?;
    let mut tally = BTreeMap::new();
    for x in samples {
        check_len(x.len(), target.dim())?;
        *tally.entry(c.ad(x).rank()).or_insert(0) += 1;
    }
    Ok(tally)
}

/// Basis vectors, all pairwise sums `e_i + e_j`, and 20 seeded pseudo-random
/// vectors with entries in `-3..=3`.
pub fn default_samples(dim: usize) -> Vec<Vec<Rational>> {
    let unit = |i: usize| {
        let mut v = vec![Rational::zero(); dim];
        v[i] = Rational::one();
        v
    };
    let mut out: Vec<Vec<Rational>> = (0..dim).map(unit).collect();
    for i in 0..dim {
        for j in i + 1..dim {
            let mut v = unit(i);
            v[j] = Rational::one();
            out.push(v);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    for _ in 0..20 {
        out.push((0..dim).map(|_| int(rng.gen_range(-3..=3))).collect());
    }
    out
}
