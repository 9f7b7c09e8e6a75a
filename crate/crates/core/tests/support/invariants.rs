//! Property checks shared by the `invariants` and `acceptance` targets.
//! Each runs a fixed number of cases from a fixed seed.

use std::collections::BTreeMap;

use filiform::catalog::{self, Class, TemplateClass};
use filiform::derivations::{derivation_space, pre_einstein};
use filiform::exact_math::{dot, int, nullspace, rat, rref, solve_affine, AffineSolution, QMatrix, Rational};
use filiform::lie::{
    act, descending_central_series, is_filiform, jacobi_residuals, rank_profile, BaseChange,
};
use filiform::nikolayevsky::{gram, positive_feasible, root_set, simplex::simplex_feasible, Feasibility};
use filiform::soliton::{functional, gradient, ricci, MetricState};
use filiform::{en_test, LieAlgebra};
use num_traits::{Signed, Zero};
use proptest::collection::vec;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{catalog_instances, random_family};

pub type Outcome = Result<(), String>;
pub type Suite = (&'static str, fn() -> Outcome);

fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Outcome {
    runner(cases).run(&strategy, test).map_err(|e| e.to_string())
}

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (1i64..=9, 1i64..=9, any::<bool>()).prop_map(|(n, d, neg)| rat(if neg { -n } else { n }, d))
}

fn small_matrix() -> impl Strategy<Value = QMatrix> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
        vec(vec(-3i64..=3, c), r).prop_map(|rows| {
            QMatrix::from_rows(
                rows.into_iter()
                    .map(|r| r.into_iter().map(int).collect())
                    .collect(),
            )
            .unwrap()
        })
    })
}

fn invertible(n: usize) -> impl Strategy<Value = BaseChange> {
    vec(vec(-2i64..=2, n), n).prop_filter_map("singular", |rows| {
        let m = QMatrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(int).collect())
                .collect(),
        )
        .ok()?;
        BaseChange::new(m).ok()
    })
}

fn diagonal(n: usize) -> impl Strategy<Value = BaseChange> {
    vec(nonzero_rational(), n).prop_map(|d| BaseChange::diagonal(&d).unwrap())
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg()))
    }
}

fn same_brackets(a: &LieAlgebra, b: &LieAlgebra) -> bool {
    a.dim() == b.dim() && a.entries().eq(b.entries())
}

// ---- exact arithmetic ----

pub fn solve_affine_members() -> Outcome {
    let s = small_matrix().prop_flat_map(|a| {
        let rows = a.rows();
        (Just(a), vec(rational(), rows), vec(vec(rational(), 5), 10))
    });
    run(100, s, |(a, b, ts)| {
        match solve_affine(&a, &b).unwrap() {
            AffineSolution::Family(f) => {
                for t in &ts {
                    let v = f.at(&t[..f.num_params()]).unwrap();
                    check(a.mul_vec(&v).unwrap() == b, || {
                        format!("member off the solution set: {v:?}")
                    })?;
                }
            }
            AffineSolution::Inconsistent { combination } => {
                let left = a.transpose().mul_vec(&combination).unwrap();
                check(
                    left.iter().all(Zero::is_zero) && !dot(&combination, &b).is_zero(),
                    || "bad inconsistency certificate".into(),
                )?;
            }
        }
        Ok(())
    })
}

pub fn rref_idempotent() -> Outcome {
    run(100, small_matrix(), |m| {
        let (r, _) = rref(&m);
        check(rref(&r).0 == r, || format!("rref not idempotent on {m}"))
    })
}

pub fn rank_nullity() -> Outcome {
    run(100, small_matrix(), |m| {
        let ns = nullspace(&m);
        for v in &ns {
            check(m.mul_vec(v).unwrap().iter().all(Zero::is_zero), || {
                "not in kernel".into()
            })?;
        }
        check(ns.len() + m.rank() == m.cols(), || {
            format!("rank-nullity fails on {m}")
        })
    })
}

pub fn rational_exactness() -> Outcome {
    run(200, (rational(), nonzero_rational()), |(x, y)| {
        check((&x + &y) - &y == x, || format!("({x} + {y}) - {y}"))?;
        check((&x * &y) / &y == x, || format!("({x} * {y}) / {y}"))
    })
}

// ---- Lie algebras ----

fn catalog_strategy() -> impl Strategy<Value = LieAlgebra> {
    let inst: Vec<LieAlgebra> = catalog_instances().into_iter().map(|x| x.1).collect();
    (0..inst.len()).prop_map(move |i| inst[i].clone())
}

pub fn jacobi_equivariance() -> Outcome {
    // A non-Lie bracket stays non-Lie after base change.
    let bad = LieAlgebra::new("bad", 8)
        .with_bracket(0, 1, 2, int(1))
        .with_bracket(1, 2, 3, int(1))
        .with_bracket(0, 3, 1, int(1));
    run(50, (catalog_strategy(), invertible(8)), |(alg, g)| {
        let moved = act(&g, &alg).unwrap();
        check(jacobi_residuals(&moved).is_empty(), || {
            format!("{} loses Jacobi", alg.name())
        })?;
        check(!jacobi_residuals(&act(&g, &bad).unwrap()).is_empty(), || {
            "violation disappeared under base change".into()
        })
    })
}

pub fn group_action() -> Outcome {
    run(
        30,
        (catalog_strategy(), invertible(8), invertible(8)),
        |(alg, g, h)| {
            let lhs = act(&g.compose(&h), &alg).unwrap();
            let rhs = act(&g, &act(&h, &alg).unwrap()).unwrap();
            check(lhs == rhs, || {
                format!("act(gh) != act(g) act(h) on {}", alg.name())
            })?;
            let back = act(&g.inverse(), &act(&g, &alg).unwrap()).unwrap();
            check(same_brackets(&back, &alg), || "g^-1 g != id".into())
        },
    )
}

pub fn bracket_antisymmetry() -> Outcome {
    run(
        200,
        (catalog_strategy(), 0usize..8, 0usize..8, 0usize..8),
        |(alg, i, j, k)| {
            check(alg.coeff(i, j, k) == -alg.coeff(j, i, k), || {
                format!("c({i},{j},{k})")
            })?;
            let ij = alg.bracket_basis(i, j);
            let ji = alg.bracket_basis(j, i);
            check(
                ij.len() == ji.len() && ij.iter().all(|(m, c)| ji.get(m) == Some(&-c)),
                || format!("[e{i},e{j}] vs [e{j},e{i}]"),
            )
        },
    )
}

pub fn catalog_flatness() -> Outcome {
    let parametric: Vec<(&str, &str)> = vec![("g8", "alpha"), ("a8", "t")];
    let mut out = Ok(());
    for (slug, p) in parametric {
        let e = catalog::entry(slug).unwrap();
        let special: Vec<Rational> = if p == "alpha" {
            vec![int(-2), int(-1), int(0)]
        } else {
            vec![int(-1), int(0)]
        };
        for v in &special {
            let a = e.ground(&super::assign(p, v.clone())).unwrap();
            if !(jacobi_residuals(&a).is_empty() && is_filiform(&a).unwrap()) {
                out = Err(format!("{slug} at {p}={v}"));
            }
        }
        out = out.and(run(5, rational(), |v| {
            let a = e.ground(&super::assign(p, v.clone())).unwrap();
            check(jacobi_residuals(&a).is_empty(), || {
                format!("{slug} Jacobi at {v}")
            })?;
            check(descending_central_series(&a).is_ok(), || {
                format!("{slug} nilpotent at {v}")
            })?;
            check(is_filiform(&a).unwrap(), || format!("{slug} filiform at {v}"))
        }));
    }
    for (label, a) in catalog_instances() {
        if !(jacobi_residuals(&a).is_empty() && is_filiform(&a).unwrap()) {
            return Err(label);
        }
    }
    out
}

pub fn rank_profile_permutation() -> Outcome {
    let samples = filiform::lie::default_samples(8);
    run(30, (catalog_strategy(), permutation(8)), |(alg, perm)| {
        let p = BaseChange::permutation(&perm).unwrap();
        let moved = act(&p, &alg).unwrap();
        let moved_samples: Vec<Vec<Rational>> = samples.iter().map(|x| p.apply(x)).collect();
        let before = rank_profile(&alg, 0, &samples).unwrap();
        let after = rank_profile(&moved, 0, &moved_samples).unwrap();
        check(before == after, || format!("{} under {perm:?}", alg.name()))
    })
}

// ---- derivations ----

pub fn pre_einstein_unique_and_verified() -> Outcome {
    for (label, a) in catalog_instances() {
        let p = pre_einstein(&a).map_err(|e| format!("{label}: {e}"))?;
        // Independent recheck of tr(φψ) = tr ψ on the full derivation algebra.
        for psi in derivation_space(&a).unwrap().basis {
            if p.phi.mul(&psi).unwrap().trace() != psi.trace() {
                return Err(format!("{label}: trace identity"));
            }
        }
    }
    Ok(())
}

pub fn pre_einstein_diagonal_scaling() -> Outcome {
    run(40, (catalog_strategy(), diagonal(8)), |(alg, g)| {
        let a = pre_einstein(&alg).unwrap();
        let b = pre_einstein(&act(&g, &alg).unwrap()).unwrap();
        check(a.eigenvalues == b.eigenvalues, || {
            format!("{} eigenvalues moved", alg.name())
        })
    })
}

pub fn template_proportionality() -> Outcome {
    for e in catalog::entries() {
        let Class::Template(class, r) = e.class else {
            continue;
        };
        let n = 8i64;
        let r = r as i64;
        let expect: Vec<i64> = match class {
            TemplateClass::A => std::iter::once(1).chain(r..=n + r - 2).collect(),
            TemplateClass::B => std::iter::once(1)
                .chain(r..=n + r - 3)
                .chain(std::iter::once(n + 2 * r - 3))
                .collect(),
        };
        for s in catalog::parameter_samples(e.slug).unwrap() {
            let p = pre_einstein(&e.ground(&s).unwrap()).unwrap();
            let scale = &p.eigenvalues[0];
            let got: Vec<Rational> = p.eigenvalues.iter().map(|x| x / scale).collect();
            let want: Vec<Rational> = expect.iter().map(|&k| int(k)).collect();
            if got != want {
                return Err(format!("{} at {s:?}: {got:?}", e.slug));
            }
        }
    }
    Ok(())
}

// ---- Einstein-nilradical test ----

pub fn gram_is_psd_product() -> Outcome {
    let inst = catalog_instances();
    for (label, a) in &inst {
        let r = root_set(a).unwrap();
        let y = r.y_matrix();
        let u = gram(&r);
        if u != y.transpose().mul(&y).unwrap() || u != u.transpose() {
            return Err(format!("{label}: U != YᵗY"));
        }
    }
    let us: Vec<QMatrix> = inst.iter().map(|(_, a)| gram(&root_set(a).unwrap())).collect();
    let s = (0..us.len()).prop_flat_map(move |i| (Just(i), vec(rational(), 16)));
    run(100, s, move |(i, v)| {
        let u = &us[i];
        let v = &v[..u.rows()];
        let q = dot(v, &u.mul_vec(v).unwrap());
        check(!q.is_negative(), || format!("vᵗUv = {q}"))
    })
}

pub fn verdict_diagonal_invariance() -> Outcome {
    run(30, (catalog_strategy(), diagonal(8)), |(alg, g)| {
        let a = en_test(&alg).unwrap().verdict.status;
        let b = en_test(&act(&g, &alg).unwrap()).unwrap().verdict.status;
        check(a == b, || format!("{}: {a} vs {b}", alg.name()))
    })
}

pub fn verdict_permutation_invariance() -> Outcome {
    run(30, (catalog_strategy(), permutation(8)), |(alg, perm)| {
        let p = BaseChange::permutation(&perm).unwrap();
        let a = en_test(&alg).unwrap();
        let b = en_test(&act(&p, &alg).unwrap()).unwrap();
        check(a.verdict.status == b.verdict.status, || {
            format!("{} under {perm:?}", alg.name())
        })?;
        let mut ea = a.pre_einstein.eigenvalues.clone();
        let mut eb = b.pre_einstein.eigenvalues.clone();
        ea.sort();
        eb.sort();
        check(ea == eb, || "eigenvalue multiset changed".into())
    })
}

pub fn witness_recheck() -> Outcome {
    for (label, a) in catalog_instances() {
        let r = en_test(&a).unwrap();
        if let Some(w) = &r.verdict.witness {
            let ones = vec![int(1); w.len()];
            if r.gram.mul_vec(w).unwrap() != ones || !w.iter().all(Signed::is_positive) {
                return Err(label);
            }
        }
    }
    Ok(())
}

pub fn feasibility_oracles_agree() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xfea5);
    for idx in 0..100 {
        let f = random_family(&mut rng, idx);
        let fm = positive_feasible(&f);
        let ok = match &fm {
            Feasibility::Witness { v, .. } => v.iter().all(Signed::is_positive),
            Feasibility::Infeasible(c) => c.verify(&f),
        };
        if !ok || fm.is_feasible() != simplex_feasible(&f).unwrap() {
            return Err(format!("family {idx}: {f:?}"));
        }
    }
    Ok(())
}

// ---- soliton ----

fn state_strategy() -> impl Strategy<Value = MetricState> {
    (catalog_strategy(), vec(-1.0f64..1.0, 8)).prop_map(|(alg, s)| MetricState::with_scales(&alg, s).unwrap())
}

pub fn ricci_trace_identity() -> Outcome {
    run(50, state_strategy(), |st| {
        let s = &st.log_scales;
        let c = st.algebra().constants().unwrap();
        // Ordered pairs count each i<j bracket twice.
        let sum: f64 = c
            .entries()
            .iter()
            .map(|(i, j, k, v)| {
                let x = filiform::exact_math::rational::to_f64(v) * (s[*i] + s[*j] - s[*k]).exp();
                2.0 * x * x
            })
            .sum();
        let expect = -0.25 * sum;
        let got = ricci(&st).trace();
        check((got - expect).abs() <= 1e-12 * expect.abs(), || {
            format!("{got} vs {expect}")
        })
    })
}

pub fn functional_scale_invariance() -> Outcome {
    run(50, (state_strategy(), -2.0f64..2.0), |(st, shift)| {
        let f0 = functional(&st);
        let moved: Vec<f64> = st.log_scales.iter().map(|x| x + shift).collect();
        let f1 = functional(&MetricState::with_scales(st.algebra(), moved).unwrap());
        check((f1 - f0).abs() <= 1e-12 * f0.abs(), || format!("{f0} vs {f1}"))
    })
}

pub fn gradient_schemes_agree() -> Outcome {
    run(30, state_strategy(), |st| {
        let g = gradient(&st, 1e-6);
        let h = gradient(&st, 1e-4);
        let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let diff: Vec<f64> = g.iter().zip(&h).map(|(a, b)| a - b).collect();
        check(norm(&diff) <= 1e-6 * norm(&g), || format!("{g:?} vs {h:?}"))
    })
}

/// Flows on every Yes instance (α ∈ {−1, 0, 3}, t ∈ {0, 1}) converge and
/// reproduce the exact pre-Einstein eigenvalue ratios.
pub fn flows_match_exact() -> Outcome {
    let mut cases: Vec<(String, LieAlgebra)> = Vec::new();
    for e in catalog::entries() {
        if e.expected == catalog::ExpectedVerdict::No {
            continue;
        }
        let values: Vec<BTreeMap<String, Rational>> = match e.params() {
            [] => vec![BTreeMap::new()],
            [p] if p == "alpha" => [-1, 0, 3].iter().map(|&v| super::assign(p, int(v))).collect(),
            [p] => [0, 1].iter().map(|&v| super::assign(p, int(v))).collect(),
            _ => unreachable!(),
        };
        for v in values {
            cases.push((format!("{} {v:?}", e.slug), e.ground(&v).unwrap()));
        }
    }
    for (label, a) in cases {
        let report = filiform::soliton::flow(&a, 50_000, 1.0, 1e-8).map_err(|e| format!("{label}: {e}"))?;
        if !report.converged {
            return Err(format!("{label}: no convergence"));
        }
        let exact = pre_einstein(&a).unwrap().eigenvalues;
        let max = exact.iter().max().unwrap().clone();
        let phi = report.normalized_phi();
        for (x, e) in phi.iter().zip(&exact) {
            let want = filiform::exact_math::rational::to_f64(&(e / &max));
            if (x - want).abs() > 1e-4 * want.abs() {
                return Err(format!("{label}: {phi:?}"));
            }
        }
    }
    Ok(())
}

pub fn all() -> Vec<Suite> {
    vec![
        ("solve_affine members", solve_affine_members),
        ("rref idempotence", rref_idempotent),
        ("rank-nullity", rank_nullity),
        ("rational exactness", rational_exactness),
        ("Jacobi equivariance", jacobi_equivariance),
        ("group action", group_action),
        ("bracket antisymmetry", bracket_antisymmetry),
        ("catalog flatness", catalog_flatness),
        ("rank profile under permutation", rank_profile_permutation),
        (
            "pre-Einstein uniqueness and trace identity",
            pre_einstein_unique_and_verified,
        ),
        (
            "pre-Einstein under diagonal scaling",
            pre_einstein_diagonal_scaling,
        ),
        ("template eigenvalue proportionality", template_proportionality),
        ("U = YᵗY positive semidefinite", gram_is_psd_product),
        ("verdict under diagonal base change", verdict_diagonal_invariance),
        ("verdict under permutation", verdict_permutation_invariance),
        ("witness recheck", witness_recheck),
        ("Fourier-Motzkin vs simplex", feasibility_oracles_agree),
        ("Ricci trace identity", ricci_trace_identity),
        ("functional scale invariance", functional_scale_invariance),
        ("finite-difference schemes agree", gradient_schemes_agree),
        ("flows match exact eigenvalues", flows_match_exact),
    ]
}
