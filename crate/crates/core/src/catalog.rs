//! The ℕ-graded filiform algebras of dimension 8, the graded `A_r` / `B_r`
//! templates they are drawn from, and the known classification results.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::derivations::EigenvalueType;
use crate::error::{Error, Result};
use crate::exact_math::{int, rat, PolyQ, Rational};
use crate::lie::LieAlgebra;
use crate::nikolayevsky::Status;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TemplateClass {
    A,
    B,
}

impl TemplateClass {
    fn letter(self) -> char {
        match self {
            TemplateClass::A => 'A',
            TemplateClass::B => 'B',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Class {
    Rank2,
    Template(TemplateClass, usize),
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Class::Rank2 => f.write_str("rank2"),
            Class::Template(c, r) => write!(f, "{}{r}", c.letter()),
        }
    }
}

/// Known verdict, possibly depending on a single parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExpectedVerdict {
    Yes,
    No,
    /// Yes unless `param` takes the exceptional value.
    YesUnless {
        param: String,
        value: Rational,
    },
}

impl ExpectedVerdict {
    pub fn at(&self, assignment: &BTreeMap<String, Rational>) -> Result<Status> {
        Ok(match self {
            ExpectedVerdict::Yes => Status::Yes,
            ExpectedVerdict::No => Status::No,
            ExpectedVerdict::YesUnless { param, value } => {
                let v = assignment
                    .get(param)
                    .ok_or_else(|| Error::MissingParameter(param.clone()))?;
                if v == value {
                    Status::No
                } else {
                    Status::Yes
                }
            }
        })
    }
}

impl fmt::Display for ExpectedVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExpectedVerdict::Yes => f.write_str("Yes"),
            ExpectedVerdict::No => f.write_str("No"),
            ExpectedVerdict::YesUnless { param, value } => write!(f, "Yes iff {param} != {value}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    /// Shell-safe name, e.g. `c_1_0_8`.
    pub slug: &'static str,
    /// Conventional label, e.g. `c_{1,0}(8)`.
    pub label: &'static str,
    /// Possibly parametric.
    pub algebra: LieAlgebra,
    pub rank: u8,
    pub class: Class,
    pub expected: ExpectedVerdict,
    /// Eigenvalue type for the Yes cases.
    pub expected_type: Option<EigenvalueType>,
}

impl CatalogEntry {
    pub fn params(&self) -> &[String] {
        self.algebra.params()
    }

    pub fn ground(&self, assignment: &BTreeMap<String, Rational>) -> Result<LieAlgebra> {
        self.algebra.ground(assignment)
    }
}

fn check_range(class: TemplateClass, r: usize, n: usize) -> Result<()> {
    let hi = match class {
        TemplateClass::A => n.checked_sub(3),
        TemplateClass::B => n.checked_sub(4),
    };
    match hi {
        Some(hi) if (2..=hi).contains(&r) => Ok(()),
        _ => Err(Error::TemplateRange {
            class: class.letter(),
            r,
            n,
        }),
    }
}

/// Pairs `(i, j)`, 1-based with `2 ≤ i < j`, that carry a graded bracket
/// `[e_i, e_j] = c_ij e_{i+j+r-2}`.
pub fn template_pairs(class: TemplateClass, r: usize, n: usize) -> Result<Vec<(usize, usize)>> {
    check_range(class, r, n)?;
    let top = match class {
        TemplateClass::A => n,
        TemplateClass::B => n - 1,
    };
    let mut out = Vec::new();
    for i in 2..=n {
        for j in i + 1..=n {
            if i + j + r - 2 <= top {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}

/// The `A_r` or `B_r` template with the given graded coefficients (1-based
/// keys). Pairs absent from `coeffs` get coefficient zero.
pub fn template(
    class: TemplateClass,
    r: usize,
    n: usize,
    coeffs: &BTreeMap<(usize, usize), PolyQ>,
) -> Result<LieAlgebra> {
    let pairs = template_pairs(class, r, n)?;
    let chain_top = match class {
        TemplateClass::A => n - 1,
        TemplateClass::B => n - 2,
    };
    let mut params: Vec<String> = coeffs.values().flat_map(PolyQ::variables).collect();
    params.sort();
    params.dedup();
    let mut alg = LieAlgebra::new(format!("{}{r}({n})", class.letter()), n).with_params(params);
    for i in 2..=chain_top {
        alg.set(0, i - 1, i, PolyQ::constant(Rational::one()))?;
    }
    for (&(i, j), c) in coeffs {
        if !pairs.contains(&(i, j)) {
            return Err(Error::IndexOutOfRange(format!(
                "pair ({i},{j}) is not graded in {}{r}({n})",
                class.letter()
            )));
        }
        alg.set(i - 1, j - 1, i + j + r - 3, c.clone())?;
    }
    if class == TemplateClass::B {
        for i in 2..=n / 2 {
            let sign = if i % 2 == 0 { -1 } else { 1 };
            alg.set(i - 1, n - i, n - 1, PolyQ::constant(int(sign)))?;
        }
    }
    Ok(alg)
}

/// Name of the free coefficient of pair `(i, j)` in the generic template.
pub fn coefficient_name(i: usize, j: usize) -> String {
    if i < 10 && j < 10 {
        format!("c{i}{j}")
    } else {
        format!("c{i}_{j}")
    }
}

/// Every graded coefficient left as its own parameter.
pub fn template_generic(class: TemplateClass, r: usize, n: usize) -> Result<LieAlgebra> {
    let coeffs = template_pairs(class, r, n)?
        .into_iter()
        .map(|(i, j)| ((i, j), PolyQ::var(&coefficient_name(i, j))))
        .collect();
    template(class, r, n, &coeffs)
}

fn coeffs(items: &[((usize, usize), PolyQ)]) -> BTreeMap<(usize, usize), PolyQ> {
    items.iter().cloned().collect()
}

fn c(x: Rational) -> PolyQ {
    PolyQ::constant(x)
}

fn p(s: &str) -> PolyQ {
    PolyQ::parse(s).expect("catalog polynomial")
}

fn chain(name: &str, n: usize, top: usize) -> LieAlgebra {
    let mut a = LieAlgebra::new(name, n);
    for i in 2..=top {
        a.set(0, i - 1, i, c(int(1))).expect("chain bracket");
    }
    a
}

fn from_template(
    name: &str,
    class: TemplateClass,
    r: usize,
    items: &[((usize, usize), PolyQ)],
) -> LieAlgebra {
    template(class, r, 8, &coeffs(items))
        .expect("catalog template")
        .with_name(name)
}

fn build(slug: &str) -> Option<CatalogEntry> {
    use TemplateClass::{A, B};
    let one = || c(int(1));
    let yes = |ty: &[i64]| (ExpectedVerdict::Yes, Some(EigenvalueType::simple(ty)));
    let (label, algebra, rank, class, (expected, expected_type)) = match slug {
        "m0_8" => (
            "m_0(8)",
            chain(slug, 8, 7),
            2,
            Class::Rank2,
            yes(&[1, 26, 27, 28, 29, 30, 31, 32]),
        ),
        "m1_8" => {
            // Chain through e7; the pairs (i, 9-i) close into e8.
            let mut a = chain(slug, 8, 6);
            for i in 2..=4 {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                a.set(i - 1, 8 - i, 7, c(int(sign))).expect("m1 bracket");
            }
            (
                "m_1(8)",
                a,
                2,
                Class::Rank2,
                yes(&[10, 123, 133, 143, 153, 163, 173, 296]),
            )
        }
        "m2_8" => (
            "m_2(8)",
            from_template(
                slug,
                A,
                2,
                &[((2, 3), one()), ((2, 4), one()), ((2, 5), one()), ((2, 6), one())],
            ),
            1,
            Class::Template(A, 2),
            (ExpectedVerdict::No, None),
        ),
        "g8" => (
            "g_alpha(8)",
            from_template(
                slug,
                A,
                2,
                &[
                    ((2, 3), p("2+alpha")),
                    ((2, 4), p("2+alpha")),
                    ((2, 5), p("1+alpha")),
                    ((2, 6), p("alpha")),
                    ((3, 4), one()),
                    ((3, 5), one()),
                ],
            ),
            1,
            Class::Template(A, 2),
            (
                ExpectedVerdict::YesUnless {
                    param: "alpha".into(),
                    value: int(-2),
                },
                Some(EigenvalueType::simple(&[1, 2, 3, 4, 5, 6, 7, 8])),
            ),
        ),
        "a8" => (
            "a_t(8)",
            from_template(
                slug,
                A,
                3,
                &[
                    ((2, 3), p("t+1")),
                    ((2, 4), p("t+1")),
                    ((2, 5), p("t")),
                    ((3, 4), one()),
                ],
            ),
            1,
            Class::Template(A, 3),
            (
                ExpectedVerdict::YesUnless {
                    param: "t".into(),
                    value: int(-1),
                },
                Some(EigenvalueType::simple(&[1, 3, 4, 5, 6, 7, 8, 9])),
            ),
        ),
        "c_1_0_8" => (
            "c_{1,0}(8)",
            from_template(slug, A, 3, &[((2, 3), one()), ((2, 4), one()), ((2, 5), one())]),
            1,
            Class::Template(A, 3),
            (ExpectedVerdict::No, None),
        ),
        "d1_8" => (
            "d_1(8)",
            from_template(slug, A, 4, &[((2, 3), one()), ((2, 4), one())]),
            1,
            Class::Template(A, 4),
            yes(&[1, 4, 5, 6, 7, 8, 9, 10]),
        ),
        "h1_8" => (
            "h_1(8)",
            from_template(slug, A, 5, &[((2, 3), one())]),
            1,
            Class::Template(A, 5),
            yes(&[1, 5, 6, 7, 8, 9, 10, 11]),
        ),
        "b8" => (
            "b(8)",
            from_template(
                slug,
                B,
                2,
                &[
                    ((2, 3), c(rat(-1, 2))),
                    ((2, 4), c(rat(-1, 2))),
                    ((2, 5), c(rat(-3, 2))),
                    ((3, 4), one()),
                ],
            ),
            1,
            Class::Template(B, 2),
            yes(&[1, 2, 3, 4, 5, 6, 7, 9]),
        ),
        "k1_8" => (
            "k_1(8)",
            from_template(slug, B, 3, &[((2, 3), one()), ((2, 4), one())]),
            1,
            Class::Template(B, 3),
            yes(&[1, 3, 4, 5, 6, 7, 8, 11]),
        ),
        "s1_8" => (
            "s_1(8)",
            from_template(slug, B, 4, &[((2, 3), one())]),
            1,
            Class::Template(B, 4),
            yes(&[1, 4, 5, 6, 7, 8, 9, 13]),
        ),
        _ => return None,
    };
    let slug = SLUGS.iter().find(|s| **s == slug)?;
    Some(CatalogEntry {
        slug,
        label,
        algebra,
        rank,
        class,
        expected,
        expected_type,
    })
}

/// Catalog order, following the classification table.
pub const SLUGS: [&str; 11] = [
    "m0_8", "m1_8", "m2_8", "g8", "a8", "c_1_0_8", "d1_8", "h1_8", "b8", "k1_8", "s1_8",
];

fn normalize(name: &str) -> String {
    name.chars()
        .filter(|c| *c != '_')
        .flat_map(char::to_lowercase)
        .collect()
}

/// Canonical slug for a name; underscores and case are ignored, so `h_1_8`
/// and `H1_8` both resolve to `h1_8`.
pub fn resolve(name: &str) -> Result<&'static str> {
    let key = normalize(name);
    SLUGS
        .iter()
        .copied()
        .find(|s| normalize(s) == key)
        .ok_or_else(|| Error::UnknownName(name.to_string()))
}

pub fn entry(name: &str) -> Result<CatalogEntry> {
    Ok(build(resolve(name)?).expect("every slug builds"))
}

pub fn entries() -> Vec<CatalogEntry> {
    SLUGS
        .iter()
        .map(|s| build(s).expect("every slug builds"))
        .collect()
}

/// The grounded algebra. Parametric entries need exactly their parameters.
pub fn get(name: &str, assignment: &BTreeMap<String, Rational>) -> Result<LieAlgebra> {
    entry(name)?.ground(assignment)
}

pub fn expected(name: &str) -> Result<(ExpectedVerdict, Option<EigenvalueType>)> {
    let e = entry(name)?;
    Ok((e.expected, e.expected_type))
}

/// Parameter values exercised for each entry: α ∈ {−2, −1, 0, 1/2, 3},
/// t ∈ {−1, 0, 1, 5/2}; a single empty assignment for fixed algebras.
pub fn parameter_samples(name: &str) -> Result<Vec<BTreeMap<String, Rational>>> {
    let e = entry(name)?;
    let values: Vec<Rational> = match e.params() {
        [] => return Ok(vec![BTreeMap::new()]),
        [p] if p == "alpha" => vec![int(-2), int(-1), int(0), rat(1, 2), int(3)],
        [p] if p == "t" => vec![int(-1), int(0), int(1), rat(5, 2)],
        other => return Err(Error::Invariant(format!("no samples for parameters {other:?}"))),
    };
    let param = e.params()[0].clone();
    Ok(values
        .into_iter()
        .map(|v| BTreeMap::from([(param.clone(), v)]))
        .collect())
}

/// One row of the classification table: an entry restricted to the sampled
/// parameter values that share a verdict.
#[derive(Clone, Debug)]
pub struct TableRow {
    pub label: String,
    pub slug: &'static str,
    pub samples: Vec<BTreeMap<String, Rational>>,
    pub expected: Status,
    pub expected_type: Option<EigenvalueType>,
}

/// The 13 rows of the classification table, in table order.
pub fn table_rows() -> Vec<TableRow> {
    let mut rows = Vec::new();
    for e in entries() {
        let samples = parameter_samples(e.slug).expect("catalog samples");
        match &e.expected {
            ExpectedVerdict::YesUnless { param, value } => {
                let (generic, special): (Vec<_>, Vec<_>) =
                    samples.into_iter().partition(|s| s.get(param) != Some(value));
                let base = e.label.split('(').next().unwrap_or(e.label);
                let stem = base.split('_').next().unwrap_or(base);
                rows.push(TableRow {
                    label: format!("{}, {param} != {value}", e.label),
                    slug: e.slug,
                    samples: generic,
                    expected: Status::Yes,
                    expected_type: e.expected_type.clone(),
                });
                rows.push(TableRow {
                    label: format!("{stem}_{value}(8)"),
                    slug: e.slug,
                    samples: special,
                    expected: Status::No,
                    expected_type: None,
                });
            }
            v => rows.push(TableRow {
                label: e.label.to_string(),
                slug: e.slug,
                samples,
                expected: v.at(&BTreeMap::new()).expect("fixed verdict"),
                expected_type: e.expected_type.clone(),
            }),
        }
    }
    rows
}

/// Sorted view of an assignment as `name=value` pairs.
pub fn format_assignment(a: &BTreeMap<String, Rational>) -> String {
    a.iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(",")
}
