//! Exact simplex over the rationals, used as an independent oracle for
//! [`positive_feasible`](super::positive_feasible).
//!
//! The positivity question for `v = p + B t` is recast as
//! `maximize ε subject to p + B t ≥ ε·1, ε ≤ 1` with `t` and `ε` free. The
//! family is positive somewhere iff the optimum is strictly positive.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_math::{Rational, SolutionFamily};

/// Maximizes `cᵗx` subject to `A x ≤ b`, `x ≥ 0`, for `b ≥ 0` (the origin is
/// a feasible vertex). Bland's rule guarantees termination. Returns the
/// optimal value and point, or `None` when the objective is unbounded.
pub fn maximize(
    a: &[Vec<Rational>],
    b: &[Rational],
    c: &[Rational],
) -> Result<Option<(Rational, Vec<Rational>)>> {
    let m = a.len();
    let n = c.len();
    if b.len() != m || a.iter().any(|row| row.len() != n) {
        return Err(Error::DimensionMismatch("simplex tableau shape".into()));
    }
    if b.iter().any(Signed::is_negative) {
        return Err(Error::Invariant(
            "simplex needs a nonnegative right-hand side".into(),
        ));
    }
    // Columns: n structural variables then m slacks; last column is the rhs.
    let width = n + m + 1;
    let mut tab: Vec<Vec<Rational>> = (0..m)
        .map(|r| {
            let mut row = vec![Rational::zero(); width];
            row[..n].clone_from_slice(&a[r]);
            row[n + r] = Rational::one();
            row[width - 1] = b[r].clone();
            row
        })
        .collect();
    // Reduced costs `c_j - z_j`; objective value is `-obj[width-1]`.
    let mut obj = vec![Rational::zero(); width];
    obj[..n].clone_from_slice(c);
    let mut basis: Vec<usize> = (n..n + m).collect();

    while let Some(enter) = (0..n + m).find(|&j| obj[j].is_positive()) {
        let mut leave: Option<(usize, Rational)> = None;
        for r in 0..m {
            if tab[r][enter].is_positive() {
                let ratio = &tab[r][width - 1] / &tab[r][enter];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let Some((pr, _)) = leave else {
            return Ok(None);
        };
        let piv = tab[pr][enter].clone();
        for x in tab[pr].iter_mut() {
            *x /= &piv;
        }
        let pivot_row = tab[pr].clone();
        for (r, row) in tab.iter_mut().enumerate() {
            if r == pr || row[enter].is_zero() {
                continue;
            }
            let f = row[enter].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
        let f = obj[enter].clone();
        for (x, y) in obj.iter_mut().zip(&pivot_row) {
            *x -= &f * y;
        }
        basis[pr] = enter;
    }

    let mut x = vec![Rational::zero(); n];
    for (r, &var) in basis.iter().enumerate() {
        if var < n {
            x[var] = tab[r][width - 1].clone();
        }
    }
    let value = c.iter().zip(&x).map(|(ci, xi)| ci * xi).sum();
    Ok(Some((value, x)))
}

/// Largest `ε ≤ 1` such that some member of the family has every coordinate
/// at least `ε`.
pub fn max_margin(fam: &SolutionFamily) -> Result<Rational> {
    let n = fam.dim();
    let p = fam.num_params();
    // ε = e0 + ε⁺ − ε⁻ with e0 = min(min p, 1), so the origin is feasible.
    let e0 = fam
        .particular
        .iter()
        .chain(std::iter::once(&Rational::one()))
        .min()
        .cloned()
        .unwrap_or_else(Rational::one);
    // Variables: t⁺ (p), t⁻ (p), ε⁺, ε⁻.
    let cols = 2 * p + 2;
    let mut a = Vec::with_capacity(n + 1);
    let mut b = Vec::with_capacity(n + 1);
    for k in 0..n {
        let mut row = vec![Rational::zero(); cols];
        for (i, basis) in fam.basis.iter().enumerate() {
            row[i] = -basis[k].clone();
            row[p + i] = basis[k].clone();
        }
        row[2 * p] = Rational::one();
        row[2 * p + 1] = -Rational::one();
        a.push(row);
        b.push(&fam.particular[k] - &e0);
    }
    let mut cap = vec![Rational::zero(); cols];
    cap[2 * p] = Rational::one();
    cap[2 * p + 1] = -Rational::one();
    a.push(cap);
    b.push(Rational::one() - &e0);

    let mut c = vec![Rational::zero(); cols];
    c[2 * p] = Rational::one();
    c[2 * p + 1] = -Rational::one();
    match maximize(&a, &b, &c)? {
        Some((value, _)) => Ok(value + e0),
        None => Err(Error::Invariant("margin program unbounded despite ε ≤ 1".into())),
    }
}

/// Exact-simplex decision of strict positivity.
pub fn simplex_feasible(fam: &SolutionFamily) -> Result<bool> {
    Ok(max_margin(fam)?.is_positive())
}
