#![allow(dead_code)]

pub mod invariants;

use std::collections::BTreeMap;
use std::path::PathBuf;

use filiform::catalog::{self, TemplateClass};
use filiform::exact_math::{int, rat, PolyQ, QMatrix, Rational, SolutionFamily};
use filiform::lie::BaseChange;
use filiform::LieAlgebra;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn assign(name: &str, v: Rational) -> BTreeMap<String, Rational> {
    BTreeMap::from([(name.to_string(), v)])
}

pub fn grounded(slug: &str, params: &[(&str, Rational)]) -> LieAlgebra {
    let a: BTreeMap<String, Rational> = params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
    catalog::get(slug, &a).expect("catalog algebra")
}

/// Every catalog entry at every sampled parameter value.
pub fn catalog_instances() -> Vec<(String, LieAlgebra)> {
    let mut out = Vec::new();
    for e in catalog::entries() {
        for s in catalog::parameter_samples(e.slug).unwrap() {
            let label = if s.is_empty() {
                e.slug.to_string()
            } else {
                format!("{}[{}]", e.slug, catalog::format_assignment(&s))
            };
            out.push((label, e.ground(&s).unwrap()));
        }
    }
    out
}

pub fn golden_gram(name: &str) -> QMatrix {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name]
        .iter()
        .collect();
    let text = std::fs::read_to_string(&path).expect("golden file");
    let rows = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split_whitespace().map(|x| int(x.parse().unwrap())).collect())
        .collect();
    QMatrix::from_rows(rows).unwrap()
}

pub fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

pub fn nonzero_rational(rng: &mut ChaCha8Rng) -> Rational {
    let mut n = 0;
    while n == 0 {
        n = rng.gen_range(-5..=5);
    }
    rat(n, rng.gen_range(1..=4))
}

pub fn random_diagonal(rng: &mut ChaCha8Rng, n: usize) -> BaseChange {
    let d: Vec<Rational> = (0..n).map(|_| nonzero_rational(rng)).collect();
    BaseChange::diagonal(&d).unwrap()
}

pub fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        p.swap(i, rng.gen_range(0..=i));
    }
    p
}

/// Seeded affine families with `N ≤ 12` coordinates and at most 5
/// parameters. Every third family plants a constant coordinate and every
/// third plants an opposed pair, so both outcomes occur.
pub fn random_family(rng: &mut ChaCha8Rng, idx: usize) -> SolutionFamily {
    let n = rng.gen_range(1..=12);
    let m = rng.gen_range(0..=5usize.min(n));
    let mut particular: Vec<Rational> = (0..n).map(|_| small_rational(rng)).collect();
    let mut basis: Vec<Vec<Rational>> = (0..m)
        .map(|_| {
            (0..n)
                .map(|_| {
                    if rng.gen_bool(0.5) {
                        Rational::from_integer(0.into())
                    } else {
                        int(rng.gen_range(-3..=3))
                    }
                })
                .collect()
        })
        .collect();
    match idx % 3 {
        1 => {
            let k = rng.gen_range(0..n);
            for b in basis.iter_mut() {
                b[k] = int(0);
            }
        }
        2 if n >= 2 => {
            let (k, l) = (0, 1 + rng.gen_range(0..n - 1));
            for b in basis.iter_mut() {
                b[l] = -b[k].clone();
            }
            particular[l] = -&particular[k] + int(rng.gen_range(-1..=1));
        }
        _ => {}
    }
    SolutionFamily::new(particular, basis)
}

/// `[e1,e_i] = e_{i+1}` (i = 2..7), `[e2,e3] = a e7`, `[e2,e4] = a e8`.
pub fn a4_family(a: &Rational) -> LieAlgebra {
    let c = PolyQ::constant(a.clone());
    let m = BTreeMap::from([((2, 3), c.clone()), ((2, 4), c)]);
    catalog::template(TemplateClass::A, 4, 8, &m).unwrap()
}

/// The `B_2` family containing `b(8)` at `a = −1/2`.
pub fn b2_family(a: &Rational) -> LieAlgebra {
    let c = |x: Rational| PolyQ::constant(x);
    let m = BTreeMap::from([
        ((2, 3), c(a.clone())),
        ((2, 4), c(a.clone())),
        ((2, 5), c(a * int(3))),
        ((3, 4), c(a * int(-2))),
    ]);
    catalog::template(TemplateClass::B, 2, 8, &m).unwrap()
}

/// Same structure constants, ignoring the name.
pub fn same_brackets(a: &LieAlgebra, b: &LieAlgebra) -> bool {
    a.dim() == b.dim() && a.entries().eq(b.entries())
}
