//! Command-line front end for the `filiform` library.
//!
//! [`run`] parses an argument vector, writes to the given sinks and returns
//! the process exit code: 0 when the computation finished (whatever the
//! verdict), 1 for bad input and 2 when an internal invariant fails.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use filiform::catalog::{self, TableRow};
use filiform::exact_math::rational::parse_rational;
use filiform::lie::{descending_central_series, is_filiform, jacobi_residuals};
use filiform::report::{FlowRecord, Report, VerdictRecord};
use filiform::soliton::{flow_with, FlowMethod, FlowOptions};
use filiform::{en_test, pre_einstein, EnReport, Error, LieAlgebra, Rational, Status};
use rayon::prelude::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "filiform",
    version,
    about = "Einstein-nilradical test for nilpotent Lie algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Jacobi, nilpotency and filiform diagnostics.
    Validate {
        /// Interchange file or catalog name.
        target: String,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// List or export catalog algebras.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Pre-Einstein derivation and its eigenvalue type.
    PreEinstein {
        target: String,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Decide whether the algebra is an Einstein nilradical.
    EnTest {
        target: String,
        #[command(flatten)]
        params: ParamArgs,
        /// Emit the verdict record as JSON.
        #[arg(long)]
        json: bool,
        /// Also print the root set, the Gram matrix and the solution family.
        #[arg(long)]
        certificate: bool,
    },
    /// Verdicts for the whole 8-dimensional filiform catalog.
    Table2,
    /// Numeric soliton flow on diagonal metrics.
    Flow {
        target: String,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 50_000)]
        max_iter: usize,
        #[arg(long, default_value_t = 1.0)]
        step: f64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Method::Bracket)]
        method: Method,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    List,
    /// Print an entry in the interchange format; parameters stay symbolic
    /// unless values are given.
    Export {
        name: String,
        #[command(flatten)]
        params: ParamArgs,
    },
}

#[derive(Args, Debug, Default)]
struct ParamArgs {
    /// Parameter value, `NAME=RATIONAL`; repeatable.
    #[arg(long = "param", value_name = "NAME=RATIONAL", value_parser = parse_param)]
    param: Vec<(String, Rational)>,
}

impl ParamArgs {
    fn assignment(&self) -> Result<BTreeMap<String, Rational>, CliError> {
        let mut out = BTreeMap::new();
        for (k, v) in &self.param {
            if out.insert(k.clone(), v.clone()).is_some() {
                return Err(CliError::Input(format!("parameter `{k}` given twice")));
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Bracket,
    Gradient,
}

fn parse_param(s: &str) -> Result<(String, Rational), String> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected NAME=RATIONAL, got `{s}`"))?;
    let name = name.trim();
    if name.is_empty() {
        return Err(format!("empty parameter name in `{s}`"));
    }
    let v = parse_rational(value.trim()).map_err(|e| e.to_string())?;
    Ok((name.to_string(), v))
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(s) => f.write_str(s),
            CliError::Core(e) => e.fmt(f),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_internal() => EXIT_INTERNAL,
            _ => EXIT_INPUT,
        }
    }
}

/// Runs against the process's stdout and stderr.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// `argv[0]` is the program name.
pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_INPUT;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let code = e.exit_code();
            let _ = writeln!(err, "error: {e}");
            code
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        Command::Validate { target, params } => validate(&target, &params, out),
        Command::Catalog {
            action: CatalogAction::List,
        } => catalog_list(out),
        Command::Catalog {
            action: CatalogAction::Export { name, params },
        } => {
            let e = catalog::entry(&name)?;
            let a = params.assignment()?;
            let alg = if a.is_empty() { e.algebra } else { e.ground(&a)? };
            out.write_all(alg.to_json().as_bytes())?;
            Ok(())
        }
        Command::PreEinstein { target, params } => pre_einstein_cmd(&target, &params, out),
        Command::EnTest {
            target,
            params,
            json,
            certificate,
        } => en_test_cmd(&target, &params, json, certificate, out),
        Command::Table2 => table2(out),
        Command::Flow {
            target,
            params,
            max_iter,
            step,
            tol,
            method,
            json,
        } => {
            let opts = FlowOptions {
                max_iter,
                step,
                tol,
                method: match method {
                    Method::Bracket => FlowMethod::Bracket,
                    Method::Gradient => FlowMethod::Gradient,
                },
            };
            flow_cmd(&target, &params, &opts, json, out)
        }
    }
}

/// A file when the path exists, otherwise a catalog name. Parameters stay
/// symbolic unless values are given.
fn load_symbolic(target: &str, a: &BTreeMap<String, Rational>) -> Result<LieAlgebra, CliError> {
    let path = Path::new(target);
    let alg = if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        LieAlgebra::from_json(&text)?
    } else {
        catalog::entry(target)?.algebra
    };
    if a.is_empty() {
        Ok(alg)
    } else {
        Ok(alg.ground(a)?)
    }
}

/// Like [`load_symbolic`], but every parameter must have a value.
fn load(target: &str, params: &ParamArgs) -> Result<(LieAlgebra, BTreeMap<String, Rational>), CliError> {
    let a = params.assignment()?;
    let alg = load_symbolic(target, &a)?;
    let alg = if alg.params().is_empty() {
        alg
    } else {
        alg.ground(&a)?
    };
    Ok((alg, a))
}

fn title(alg: &LieAlgebra, a: &BTreeMap<String, Rational>) -> String {
    if a.is_empty() {
        alg.name().to_string()
    } else {
        format!("{}[{}]", alg.name(), catalog::format_assignment(a))
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join(v: &[Rational]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn validate(target: &str, params: &ParamArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let a = params.assignment()?;
    let alg = load_symbolic(target, &a)?;
    writeln!(out, "algebra: {}", title(&alg, &a))?;
    writeln!(out, "dimension: {}", alg.dim())?;
    if !alg.params().is_empty() {
        writeln!(out, "parameters: {}", alg.params().join(", "))?;
    }
    let residuals = jacobi_residuals(&alg);
    if residuals.is_empty() {
        writeln!(out, "jacobi: ok")?;
    } else {
        writeln!(out, "jacobi: {} nonzero residuals", residuals.len())?;
        for r in &residuals {
            writeln!(out, "  {r}")?;
        }
    }
    if !alg.is_grounded() {
        writeln!(
            out,
            "central series: needs values for {}",
            alg.params().join(", ")
        )?;
        return Ok(());
    }
    match descending_central_series(&alg) {
        Ok(series) => {
            let dims: Vec<String> = series.iter().map(ToString::to_string).collect();
            writeln!(out, "central series: {}", dims.join(" "))?;
            writeln!(out, "nilpotent: yes")?;
            writeln!(out, "filiform: {}", yes_no(is_filiform(&alg)?))?;
        }
        Err(Error::NotNilpotent(d)) => {
            writeln!(out, "central series: stalls at dimension {d}")?;
            writeln!(out, "nilpotent: no")?;
            writeln!(out, "filiform: no")?;
        }
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

fn catalog_list(out: &mut dyn Write) -> Result<(), CliError> {
    for e in catalog::entries() {
        let params = if e.params().is_empty() {
            String::new()
        } else {
            format!(" ({})", e.params().join(", "))
        };
        writeln!(out, "{:<8} {:<12} {}{}", e.slug, e.label, e.class, params)?;
    }
    Ok(())
}

fn pre_einstein_cmd(target: &str, params: &ParamArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (alg, a) = load(target, params)?;
    let pe = pre_einstein(&alg)?;
    writeln!(out, "algebra: {}", title(&alg, &a))?;
    writeln!(out, "eigenvalues: {}", join(&pe.eigenvalues))?;
    match &pe.eigenvalue_type {
        Some(t) => writeln!(out, "type: {t}")?,
        None => writeln!(out, "type: none (some eigenvalue is not positive)")?,
    }
    writeln!(out, "simple: {}", yes_no(pe.simple))?;
    writeln!(out, "positive: {}", yes_no(pe.positive))?;
    writeln!(out, "derivation algebra dimension: {}", pe.derivation_dim)?;
    Ok(())
}

fn en_test_cmd(
    target: &str,
    params: &ParamArgs,
    json: bool,
    certificate: bool,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let (alg, a) = load(target, params)?;
    let rep = en_test(&alg)?;
    if json {
        let rec = Report::EnTest(VerdictRecord::new(alg.name(), &a, &rep));
        out.write_all(rec.to_json().as_bytes())?;
        return Ok(());
    }
    print_verdict(&title(&alg, &a), &rep, certificate, out)
}

fn print_verdict(name: &str, rep: &EnReport, full: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let v = &rep.verdict;
    writeln!(out, "algebra: {name}")?;
    writeln!(out, "status: {}", v.status)?;
    if let Some(r) = &v.reason {
        writeln!(out, "reason: {r}")?;
    }
    writeln!(out, "eigenvalues: {}", join(&rep.pre_einstein.eigenvalues))?;
    if let Some(t) = &rep.pre_einstein.eigenvalue_type {
        writeln!(out, "type: {t}")?;
    }
    if let Some(w) = &v.witness {
        writeln!(out, "witness: {}", join(w))?;
    }
    if let Some(c) = &v.certificate {
        writeln!(out, "certificate: {c}")?;
    }
    if !full {
        return Ok(());
    }
    writeln!(out, "roots:")?;
    for (n, &(i, j, k)) in rep.roots.roots.iter().enumerate() {
        writeln!(out, "  {:>2}: ({}, {}, {})", n + 1, i + 1, j + 1, k + 1)?;
    }
    writeln!(out, "U:")?;
    for row in rep.gram.to_rows() {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
        writeln!(out, "  {}", cells.join(" "))?;
    }
    if let Some(f) = &rep.family {
        writeln!(out, "solutions of U v = 1: particular {}", join(&f.particular))?;
        for (n, b) in f.basis.iter().enumerate() {
            writeln!(out, "  + t{} * ({})", n + 1, join(b))?;
        }
    }
    Ok(())
}

struct RowResult {
    label: String,
    samples: usize,
    status: Option<Status>,
    eigenvalue_type: Option<String>,
    expected: Status,
}

fn table2(out: &mut dyn Write) -> Result<(), CliError> {
    let rows = catalog::table_rows();
    let jobs: Vec<(usize, &TableRow, &BTreeMap<String, Rational>)> = rows
        .iter()
        .enumerate()
        .flat_map(|(n, r)| r.samples.iter().map(move |s| (n, r, s)))
        .collect();
    let verdicts: Vec<Result<(usize, EnReport), Error>> = jobs
        .par_iter()
        .map(|&(n, r, s)| {
            catalog::get(r.slug, s)
                .and_then(|a| en_test(&a))
                .map(|rep| (n, rep))
        })
        .collect();

    let mut results: Vec<RowResult> = rows
        .iter()
        .map(|r| RowResult {
            label: r.label.clone(),
            samples: r.samples.len(),
            status: None,
            eigenvalue_type: None,
            expected: r.expected,
        })
        .collect();
    let mut seen = vec![false; rows.len()];
    for v in verdicts {
        let (n, rep) = v?;
        let row = &mut results[n];
        let ty = match rep.verdict.status {
            Status::Yes => rep.pre_einstein.eigenvalue_type.as_ref().map(ToString::to_string),
            _ => None,
        };
        if !seen[n] {
            seen[n] = true;
            row.status = Some(rep.verdict.status);
            row.eigenvalue_type = ty;
        } else {
            if row.status != Some(rep.verdict.status) {
                row.status = None;
            }
            if row.eigenvalue_type != ty {
                row.eigenvalue_type = Some("varies".into());
            }
        }
    }

    let width = results
        .iter()
        .map(|r| r.label.len())
        .max()
        .unwrap_or(0)
        .max("algebra".len());
    let tw = results
        .iter()
        .filter_map(|r| r.eigenvalue_type.as_ref().map(String::len))
        .max()
        .unwrap_or(0)
        .max("eigenvalue type".len());
    writeln!(
        out,
        "{:<width$}  {:^9}  {:^9}  {:<tw$}  {:>7}  check",
        "algebra", "EN", "not EN", "eigenvalue type", "samples"
    )?;
    let mut agree = 0;
    for r in &results {
        let (yes, no) = match r.status {
            Some(Status::Yes) => ("x", ""),
            Some(_) => ("", "x"),
            None => ("?", "?"),
        };
        let ok = r.status == Some(r.expected);
        agree += usize::from(ok);
        writeln!(
            out,
            "{:<width$}  {:^9}  {:^9}  {:<tw$}  {:>7}  {}",
            r.label,
            yes,
            no,
            r.eigenvalue_type.as_deref().unwrap_or(""),
            r.samples,
            if ok { "ok" } else { "MISMATCH" }
        )?;
    }
    writeln!(
        out,
        "{agree} of {} rows agree with the classification",
        results.len()
    )?;
    Ok(())
}

fn flow_cmd(
    target: &str,
    params: &ParamArgs,
    opts: &FlowOptions,
    json: bool,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    if !(opts.step.is_finite() && opts.step > 0.0) || opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(CliError::Input("--step and --tol must be positive".into()));
    }
    let (alg, a) = load(target, params)?;
    let r = flow_with(&alg, opts)?;
    if json {
        let rec = Report::Flow(FlowRecord::new(alg.name(), &a, &r));
        out.write_all(rec.to_json().as_bytes())?;
        return Ok(());
    }
    let fmt = |v: &[f64]| v.iter().map(|x| format!("{x:.6}")).collect::<Vec<_>>().join(" ");
    writeln!(out, "algebra: {}", title(&alg, &a))?;
    writeln!(
        out,
        "converged: {} after {} iterations",
        yes_no(r.converged),
        r.iterations
    )?;
    writeln!(out, "c: {:.9}", r.c)?;
    writeln!(out, "phi: {}", fmt(&r.phi_diag))?;
    writeln!(out, "phi / max phi: {}", fmt(&r.normalized_phi()))?;
    writeln!(out, "residual: {:.3e}", r.residual)?;
    writeln!(out, "derivation residual: {:.3e}", r.derivation_residual)?;
    writeln!(out, "functional: {:.12}", r.functional)?;
    writeln!(out, "gradient norm: {:.3e}", r.gradient_norm)?;
    Ok(())
}
