use std::collections::BTreeMap;
use std::fmt;

use super::LieAlgebra;
use crate::exact_math::PolyQ;

/// Nonzero coefficient of `e_component` in
/// `[e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]`, with `i < j < k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiResidual {
    pub triple: (usize, usize, usize),
    pub component: usize,
    pub value: PolyQ,
}

impl fmt::Display for JacobiResidual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j, k) = self.triple;
        write!(
            f,
            "J(e{},e{},e{}) has e{} coefficient {}",
            i + 1,
            j + 1,
            k + 1,
            self.component + 1,
            self.value
        )
    }
}

/// `[e_a, [e_b, e_c]]` as a sparse vector.
fn nested(alg: &LieAlgebra, a: usize, b: usize, c: usize, acc: &mut BTreeMap<usize, PolyQ>) {
    for (l, inner) in alg.bracket_basis(b, c) {
        for (m, outer) in alg.bracket_basis(a, l) {
            let term = &inner * &outer;
            let slot = acc.entry(m).or_default();
            *slot = &*slot + &term;
        }
    }
}

/// All nonzero Jacobi residuals, symbolic in the algebra's parameters.
/// Empty means the Jacobi identity holds identically.
pub fn jacobi_residuals(alg: &LieAlgebra) -> Vec<JacobiResidual> {
    let n = alg.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let mut acc = BTreeMap::new();
                nested(alg, i, j, k, &mut acc);
                nested(alg, j, k, i, &mut acc);
                nested(alg, k, i, j, &mut acc);
                out.extend(
                    acc.into_iter()
                        .filter(|(_, v)| !v.is_zero())
                        .map(|(component, value)| JacobiResidual {
                            triple: (i, j, k),
                            component,
                            value,
                        }),
                );
            }
        }
    }
    out
}
