//! Strict positivity over an affine family by Fourier–Motzkin elimination.
//!
//! Each coordinate gives an open half-space `p_k + Σ_i t_i b_ik > 0` in the
//! parameters. Variables are eliminated last-to-first; every derived
//! inequality carries the nonnegative multipliers of the original rows that
//! produced it, so a contradiction `0 > c ≥ 0` is itself a Farkas certificate.
//! Derived rows combining more than `k + 1` originals after `k` eliminations
//! are redundant (Chernikov) and dropped.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::exact_math::{Rational, SolutionFamily};

/// Evidence that no member of a family is strictly positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Infeasibility {
    /// Coordinate `index` equals `value ≤ 0` for every parameter choice.
    ConstantCoordinate { index: usize, value: Rational },
    /// `y ≥ 0`, `y ≠ 0`, `Σ_k y_k b_ik = 0` for every basis vector `b_i`, and
    /// `Σ_k y_k p_k ≤ 0`.
    Farkas { multipliers: Vec<Rational> },
}

impl Infeasibility {
    /// Independent check against the family.
    pub fn verify(&self, fam: &SolutionFamily) -> bool {
        match self {
            Infeasibility::ConstantCoordinate { index, value } => {
                *index < fam.dim() && !value.is_positive() && fam.constant_coordinate(*index) == Some(value)
            }
            Infeasibility::Farkas { multipliers: y } => {
                y.len() == fam.dim()
                    && y.iter().all(|x| !x.is_negative())
                    && y.iter().any(|x| !x.is_zero())
                    && fam.basis.iter().all(|b| crate::exact_math::dot(y, b).is_zero())
                    && !crate::exact_math::dot(y, &fam.particular).is_positive()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    /// `v = particular + Σ t_i basis_i` with every coordinate positive.
    Witness {
        v: Vec<Rational>,
        t: Vec<Rational>,
    },
    Infeasible(Infeasibility),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Witness { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Row {
    coef: Vec<Rational>,
    constant: Rational,
    mult: Vec<Rational>,
}

impl Row {
    fn support(&self) -> usize {
        self.mult.iter().filter(|x| !x.is_zero()).count()
    }

    fn is_constant(&self) -> bool {
        self.coef.iter().all(Zero::is_zero)
    }

    fn scaled(&self, f: &Rational) -> Row {
        Row {
            coef: self.coef.iter().map(|x| x * f).collect(),
            constant: &self.constant * f,
            mult: self.mult.iter().map(|x| x * f).collect(),
        }
    }

    fn plus(&self, other: &Row) -> Row {
        Row {
            coef: self.coef.iter().zip(&other.coef).map(|(a, b)| a + b).collect(),
            constant: &self.constant + &other.constant,
            mult: self.mult.iter().zip(&other.mult).map(|(a, b)| a + b).collect(),
        }
    }

    /// Scale by a positive factor so the first nonzero coefficient is ±1.
    fn normalized(self) -> Row {
        match self.coef.iter().find(|x| !x.is_zero()) {
            Some(lead) => {
                let f = lead.abs().recip();
                self.scaled(&f)
            }
            None => self,
        }
    }
}

/// Back-substitution value strictly inside `(lo, hi)`.
fn pick(lo: Option<Rational>, hi: Option<Rational>) -> Rational {
    match (lo, hi) {
        (Some(l), Some(h)) => (l + h) / Rational::from_integer(2.into()),
        (Some(l), None) => l + Rational::one(),
        (None, Some(h)) => h - Rational::one(),
        (None, None) => Rational::zero(),
    }
}

/// Decides `∃ t : particular + Σ t_i basis_i > 0` componentwise.
pub fn positive_feasible(fam: &SolutionFamily) -> Feasibility {
    let n = fam.dim();
    let m = fam.num_params();

    for k in 0..n {
        if let Some(value) = fam.constant_coordinate(k) {
            if !value.is_positive() {
                return Feasibility::Infeasible(Infeasibility::ConstantCoordinate {
                    index: k,
                    value: value.clone(),
                });
            }
        }
    }

    let mut system: Vec<Row> = (0..n)
        .map(|k| {
            let mut mult = vec![Rational::zero(); n];
            mult[k] = Rational::one();
            Row {
                coef: fam.basis.iter().map(|b| b[k].clone()).collect(),
                constant: fam.particular[k].clone(),
                mult,
            }
        })
        .filter(|r| !r.is_constant())
        .map(Row::normalized)
        .collect();

    // stages[s] is the system over variables 0..m-s.
    let mut stages = Vec::with_capacity(m + 1);
    for eliminated in 0..m {
        let var = m - 1 - eliminated;
        stages.push(system.clone());
        let (mut lower, mut upper, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for row in system {
            if row.coef[var].is_positive() {
                lower.push(row);
            } else if row.coef[var].is_negative() {
                upper.push(row);
            } else {
                rest.push(row);
            }
        }
        let limit = eliminated + 2;
        let mut next: BTreeMap<(Vec<Rational>, Rational), Row> = BTreeMap::new();
        let push = |row: Row, next: &mut BTreeMap<(Vec<Rational>, Rational), Row>| {
            let key = (row.coef.clone(), row.constant.clone());
            match next.get(&key) {
                Some(old) if old.support() <= row.support() => {}
                _ => {
                    next.insert(key, row);
                }
            }
        };
        for row in rest {
            push(row, &mut next);
        }
        for lo in &lower {
            for hi in &upper {
                let combined = lo.scaled(&-hi.coef[var].clone()).plus(&hi.scaled(&lo.coef[var]));
                if combined.support() > limit {
                    continue;
                }
                let combined = combined.normalized();
                if combined.is_constant() {
                    if !combined.constant.is_positive() {
                        return Feasibility::Infeasible(Infeasibility::Farkas {
                            multipliers: combined.mult,
                        });
                    }
                    continue;
                }
                push(combined, &mut next);
            }
        }
        system = next.into_values().collect();
    }

    let mut t = vec![Rational::zero(); m];
    for var in 0..m {
        let stage = &stages[m - 1 - var];
        let (mut lo, mut hi): (Option<Rational>, Option<Rational>) = (None, None);
        for row in stage {
            let a = &row.coef[var];
            if a.is_zero() {
                continue;
            }
            let known: Rational = &row.constant + (0..var).map(|u| &row.coef[u] * &t[u]).sum::<Rational>();
            let bound = -known / a;
            if a.is_positive() {
                lo = Some(match lo {
                    Some(l) if l >= bound => l,
                    _ => bound,
                });
            } else {
                hi = Some(match hi {
                    Some(h) if h <= bound => h,
                    _ => bound,
                });
            }
        }
        t[var] = pick(lo, hi);
    }
    let v = fam.at(&t).expect("parameter count matches");
    Feasibility::Witness { v, t }
}
