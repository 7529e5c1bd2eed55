//! `conestrat`: run verification suites, emit exact coefficient tables,
//! export quadrature rules and apply symmetry-breaking transforms.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use conestrat::orthopoly::{
    ball_basis, gegenbauer, inflated_gegenbauer, jacobi_poly, juhl_coefficients, juhl_symbol, multi_indices,
    rankin_cohen_coefficients, rankin_cohen_symbol, simplex_basis,
};
use conestrat::polyalg::{parse_rational, rat, MultiPoly, PolyJson, Rational};
use conestrat::quadrature::{ball_rule, gauss_jacobi_rule, gauss_laguerre_rule, simplex_rule, QuadratureRule};
use conestrat::sbo::{pullback, sbo_apply, SboSpec};
use conestrat::verify::{self, Config, Report};
use num_complex::Complex64;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Parser, Debug)]
#[command(name = "conestrat", version, about = "Cone stratification toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run verification suites and write a report.
    Verify(VerifyArgs),
    /// Emit an exact coefficient table for a polynomial family.
    Table(TableArgs),
    /// Export a quadrature rule.
    Quad(QuadArgs),
    /// Apply a symmetry-breaking transform to a described test function.
    Transform(TransformArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct Output {
    /// Output file (standard output when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Comma-separated suite names, or `all`.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Tolerance override `NAME=VALUE`, keyed by check or suite name.
    #[arg(long, value_parser = parse_tol)]
    tol: Vec<(String, f64)>,
    /// Quadrature points per dimension for every check.
    #[arg(long)]
    order: Option<usize>,
    /// Seed for randomized point sets.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Record wall-clock times in the report.
    #[arg(long)]
    timings: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Jacobi,
    Gegenbauer,
    InflatedGegenbauer,
    Juhl,
    RankinCohen,
    Simplex,
    Ball,
}

#[derive(Args, Debug)]
struct TableArgs {
    /// Polynomial family.
    #[arg(value_enum)]
    family: Family,
    /// Parameter α (jacobi, gegenbauer, inflated-gegenbauer, juhl, ball).
    #[arg(long, default_value = "1")]
    alpha: String,
    /// Parameter β (jacobi).
    #[arg(long, default_value = "0")]
    beta: String,
    /// Simplex parameters `λ_1, …, λ_{n+1}` (simplex).
    #[arg(long, value_delimiter = ',')]
    lambda: Vec<String>,
    /// First weight λ′ (rankin-cohen).
    #[arg(long, default_value = "1")]
    lambda1: String,
    /// Second weight λ″ (rankin-cohen).
    #[arg(long, default_value = "1")]
    lambda2: String,
    /// Ball dimension (ball).
    #[arg(long, default_value_t = 2)]
    p: usize,
    /// Largest degree emitted.
    #[arg(long, default_value_t = 3)]
    degree: u32,
    #[command(flatten)]
    output: Output,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Domain {
    Interval,
    HalfLine,
    Simplex,
    Ball,
}

#[derive(Args, Debug)]
struct QuadArgs {
    /// Integration domain.
    #[arg(value_enum)]
    domain: Domain,
    /// Number of points per dimension.
    #[arg(long, default_value_t = 40)]
    n: usize,
    /// Exponent at `x = 1` (interval) or ball parameter (ball).
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    alpha: f64,
    /// Exponent at `x = −1` (interval).
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    beta: f64,
    /// Exponent of `x^a e^{−x}` (half-line).
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    a: f64,
    /// Simplex parameters `λ_1, …, λ_{n+1}` (simplex).
    #[arg(long, value_delimiter = ',')]
    lambda: Vec<f64>,
    /// Ball dimension (ball).
    #[arg(long, default_value_t = 2)]
    p: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum GeometryName {
    TensorSimplex,
    LorentzBall,
    SoP,
}

#[derive(Args, Debug)]
struct TransformArgs {
    /// Branching geometry.
    #[arg(value_enum)]
    geometry: GeometryName,
    /// Ambient dimension.
    #[arg(long)]
    n: usize,
    /// Codimension (lorentz-ball, so-p).
    #[arg(long, default_value_t = 1)]
    p: usize,
    /// Parameters: `λ_1, …, λ_n` (tensor-simplex) or a single `λ`.
    #[arg(long, value_delimiter = ',', required = true)]
    lambda: Vec<String>,
    /// Multi-index of the orthogonal basis element (tensor-simplex, lorentz-ball).
    #[arg(long, value_delimiter = ',')]
    k: Vec<u32>,
    /// Total degree (so-p).
    #[arg(long, default_value_t = 0)]
    l: u32,
    /// Radial degree (so-p).
    #[arg(long, default_value_t = 0)]
    j: u32,
    /// Test function decay `c` in `e^{−c·tr(y)}·y^m`.
    #[arg(long, default_value_t = 0.5)]
    decay: f64,
    /// Test function monomial exponents `m` on the ambient cone (zeros when omitted).
    #[arg(long, value_delimiter = ',')]
    monomial: Vec<i32>,
    /// Target points, `;`-separated, each with `,`-separated coordinates.
    #[arg(long, allow_hyphen_values = true)]
    points: String,
    /// Quadrature points per dimension.
    #[arg(long, default_value_t = 12)]
    order: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error("{0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Json(#[from] serde_json::Error),
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

fn parse_tol(s: &str) -> Result<(String, f64), String> {
    let (name, val) = s.split_once('=').ok_or_else(|| format!("expected NAME=VALUE, got `{s}`"))?;
    let v: f64 = val.trim().parse().map_err(|_| format!("invalid tolerance `{val}`"))?;
    Ok((name.trim().to_string(), v))
}

fn parse_q(s: &str) -> Result<Rational, CliError> {
    parse_rational(s).map_err(usage)
}

fn emit(output: &Output, bytes: &[u8]) -> Result<(), CliError> {
    match &output.out {
        Some(path) => fs::write(path, bytes)?,
        None => io::stdout().lock().write_all(bytes)?,
    }
    Ok(())
}

fn json_bytes(v: &impl serde::Serialize) -> Result<Vec<u8>, CliError> {
    let mut s = serde_json::to_vec_pretty(v)?;
    s.push(b'\n');
    Ok(s)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::Table(a) => cmd_table(a).map(|()| true),
        Command::Quad(a) => cmd_quad(a).map(|()| true),
        Command::Transform(a) => cmd_transform(a).map(|()| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn cmd_verify(a: VerifyArgs) -> Result<bool, CliError> {
    let config =
        Config { seed: a.seed, tol: a.tol.into_iter().collect::<BTreeMap<_, _>>(), order: a.order, timings: a.timings };
    let report = verify::run(&a.suite, &config).map_err(usage)?;
    let bytes = match a.output.format {
        Format::Json => json_bytes(&report)?,
        Format::Csv => report_csv(&report)?,
    };
    emit(&a.output, &bytes)?;
    let failures = report.failures();
    eprintln!("{} checks, {} gating failures", report.checks.len(), failures.len());
    for name in &failures {
        eprintln!("FAIL {name}");
    }
    Ok(report.passed())
}

fn report_csv(report: &Report) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["name", "anchor", "params", "value", "tolerance", "pass", "runtime_ms", "gating"])?;
    for c in &report.checks {
        w.write_record([
            c.name.clone(),
            c.anchor.clone(),
            c.params.to_string(),
            format!("{:?}", c.value),
            format!("{:?}", c.tolerance),
            c.pass.to_string(),
            c.runtime_ms.to_string(),
            c.gating.to_string(),
        ])?;
    }
    w.into_inner().map_err(|e| CliError::Io(e.into_error()))
}

struct Row {
    index: Vec<u32>,
    anchor: String,
    coefficients: Vec<Rational>,
    poly: MultiPoly,
}

fn term_coefficients(p: &MultiPoly) -> Vec<Rational> {
    p.terms().map(|(_, c)| c.clone()).collect()
}

fn table_rows(a: &TableArgs) -> Result<Vec<Row>, CliError> {
    let mut rows = Vec::new();
    match a.family {
        Family::Jacobi => {
            let (al, be) = (parse_q(&a.alpha)?, parse_q(&a.beta)?);
            for n in 0..=a.degree {
                let poly = jacobi_poly(n, &al, &be);
                rows.push(Row {
                    index: vec![n],
                    anchor: "Jacobi polynomial P_n^{(α,β)}(x), coefficients of x^0..x^n".into(),
                    coefficients: poly.univariate_coeffs(),
                    poly,
                });
            }
        }
        Family::Gegenbauer => {
            let al = parse_q(&a.alpha)?;
            for n in 0..=a.degree {
                let poly = gegenbauer(n, &al);
                rows.push(Row {
                    index: vec![n],
                    anchor: "Gegenbauer polynomial C_n^α(x), coefficients of x^0..x^n".into(),
                    coefficients: poly.univariate_coeffs(),
                    poly,
                });
            }
        }
        Family::InflatedGegenbauer => {
            let al = parse_q(&a.alpha)?;
            for n in 0..=a.degree {
                let poly = inflated_gegenbauer(n, &al);
                rows.push(Row {
                    index: vec![n],
                    anchor: "inflated Gegenbauer I_l C_l^α(x, y) = x^{l/2} C_l^α(y/x^{1/2})".into(),
                    coefficients: term_coefficients(&poly),
                    poly,
                });
            }
        }
        Family::Juhl => {
            let al = parse_q(&a.alpha)?;
            for l in 0..=a.degree {
                rows.push(Row {
                    index: vec![l],
                    anchor: "Juhl coefficients a_k(l, α) = (−1)^k 2^{l−2k} Γ(α+l−k)/(Γ(α) k! (l−2k)!)".into(),
                    coefficients: juhl_coefficients(l, &al).map_err(usage)?,
                    poly: juhl_symbol(l, &al).map_err(usage)?,
                });
            }
        }
        Family::RankinCohen => {
            let (lp, lpp) = (parse_q(&a.lambda1)?, parse_q(&a.lambda2)?);
            for l in 0..=a.degree {
                rows.push(Row {
                    index: vec![l],
                    anchor: "Rankin–Cohen c_j = (−1)^j (λ′+l−j)_j (λ″+j)_{l−j} / (j!(l−j)!)".into(),
                    coefficients: rankin_cohen_coefficients(&lp, &lpp, l),
                    poly: rankin_cohen_symbol(&lp, &lpp, l),
                });
            }
        }
        Family::Simplex => {
            if a.lambda.len() < 2 {
                return Err(CliError::Usage("simplex needs --lambda with at least two entries".into()));
            }
            let lam = a.lambda.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>, _>>()?;
            let n = lam.len() - 1;
            for deg in 0..=a.degree {
                for k in multi_indices(n, deg) {
                    let poly = simplex_basis(n, &lam, &k).map_err(usage)?;
                    rows.push(Row {
                        index: k,
                        anchor: "simplex orthogonal basis R_k^Λ on D_n".into(),
                        coefficients: term_coefficients(&poly),
                        poly,
                    });
                }
            }
        }
        Family::Ball => {
            let al = parse_q(&a.alpha)?;
            for deg in 0..=a.degree {
                for k in multi_indices(a.p, deg) {
                    let poly = ball_basis(a.p, &al, &k).map_err(usage)?;
                    rows.push(Row {
                        index: k,
                        anchor: "ball orthogonal basis P_k^α on the unit ball".into(),
                        coefficients: term_coefficients(&poly),
                        poly,
                    });
                }
            }
        }
    }
    Ok(rows)
}

fn value_name<T: ValueEnum>(v: T) -> String {
    v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
}

fn cmd_table(a: TableArgs) -> Result<(), CliError> {
    let rows = table_rows(&a)?;
    let family = value_name(a.family);
    let bytes = match a.output.format {
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    let poly: PolyJson = r.poly.to_json();
                    json!({
                        "family": family,
                        "index": r.index,
                        "anchor": r.anchor,
                        "coefficients": r.coefficients.iter().map(ToString::to_string).collect::<Vec<_>>(),
                        "poly": poly,
                    })
                })
                .collect();
            json_bytes(&rows)?
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["family", "index", "anchor", "exps", "coefficient"])?;
            for r in &rows {
                let index = join(&r.index, ",");
                for (e, c) in r.poly.terms() {
                    w.write_record([family.as_str(), &index, &r.anchor, &join(e, ","), &c.to_string()])?;
                }
            }
            w.into_inner().map_err(|e| CliError::Io(e.into_error()))?
        }
    };
    emit(&a.output, &bytes)
}

fn join<T: ToString>(v: &[T], sep: &str) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn cmd_quad(a: QuadArgs) -> Result<(), CliError> {
    let (rule, params): (QuadratureRule, Value) = match a.domain {
        Domain::Interval => {
            (gauss_jacobi_rule(a.n, a.alpha, a.beta).map_err(usage)?, json!({"alpha": a.alpha, "beta": a.beta}))
        }
        Domain::HalfLine => (gauss_laguerre_rule(a.n, a.a).map_err(usage)?, json!({"a": a.a})),
        Domain::Simplex => {
            if a.lambda.len() < 2 {
                return Err(CliError::Usage("simplex needs --lambda with at least two entries".into()));
            }
            (simplex_rule(a.lambda.len() - 1, &a.lambda, a.n).map_err(usage)?, json!({"lambda": a.lambda}))
        }
        Domain::Ball => (ball_rule(a.p, a.alpha, a.n).map_err(usage)?, json!({"p": a.p, "alpha": a.alpha})),
    };
    let domain = value_name(a.domain);
    let bytes = match a.output.format {
        Format::Json => json_bytes(&json!({
            "domain": domain,
            "params": params,
            "npts": a.n,
            "order": rule.order,
            "nodes": rule.nodes,
            "weights": rule.weights,
            "total_weight": rule.total_weight(),
        }))?,
        Format::Csv => {
            let dim = rule.nodes.first().map_or(0, Vec::len);
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut header: Vec<String> = (0..dim).map(|i| format!("x{i}")).collect();
            header.push("weight".into());
            w.write_record(&header)?;
            for (x, wt) in rule.nodes.iter().zip(&rule.weights) {
                let mut rec: Vec<String> = x.iter().map(|c| format!("{c:?}")).collect();
                rec.push(format!("{wt:?}"));
                w.write_record(&rec)?;
            }
            w.into_inner().map_err(|e| CliError::Io(e.into_error()))?
        }
    };
    emit(&a.output, &bytes)
}

fn parse_points(s: &str) -> Result<Vec<Vec<f64>>, CliError> {
    s.split(';')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.split(',')
                .map(|c| c.trim().parse::<f64>().map_err(|_| CliError::Usage(format!("invalid coordinate `{c}`"))))
                .collect()
        })
        .collect()
}

fn build_spec(a: &TransformArgs) -> Result<(SboSpec, Value), CliError> {
    let lam = a.lambda.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>, _>>()?;
    let single = || -> Result<Rational, CliError> {
        match lam.as_slice() {
            [l] => Ok(l.clone()),
            _ => Err(CliError::Usage("this geometry takes a single --lambda".into())),
        }
    };
    let lam_str: Vec<String> = lam.iter().map(ToString::to_string).collect();
    match a.geometry {
        GeometryName::TensorSimplex => {
            if a.n < 2 || lam.len() != a.n || a.k.len() != a.n - 1 {
                return Err(CliError::Usage(format!(
                    "tensor-simplex with --n {} needs {} lambdas and a {}-entry --k",
                    a.n,
                    a.n,
                    a.n.saturating_sub(1)
                )));
            }
            let poly = simplex_basis(a.n - 1, &lam, &a.k).map_err(usage)?;
            let spec = SboSpec::tensor(lam, a.k.iter().sum(), poly).map_err(usage)?;
            Ok((spec, json!({"n": a.n, "lambda": lam_str, "k": a.k})))
        }
        GeometryName::LorentzBall => {
            let l = single()?;
            if a.k.len() != a.p {
                return Err(CliError::Usage(format!("lorentz-ball with --p {} needs a {}-entry --k", a.p, a.p)));
            }
            let alpha = &l - rat(a.n as i64 - 1, 2);
            let poly = ball_basis(a.p, &alpha, &a.k).map_err(usage)?;
            let spec = SboSpec::ball(a.n, a.p, l, a.k.iter().sum(), poly).map_err(usage)?;
            Ok((spec, json!({"n": a.n, "p": a.p, "lambda": lam_str, "k": a.k})))
        }
        GeometryName::SoP => {
            let spec = SboSpec::so_p(a.n, a.p, single()?, a.l, a.j).map_err(usage)?;
            Ok((spec, json!({"n": a.n, "p": a.p, "lambda": lam_str, "l": a.l, "j": a.j})))
        }
    }
}

fn cmd_transform(a: TransformArgs) -> Result<(), CliError> {
    let (spec, params) = build_spec(&a)?;
    let points = parse_points(&a.points)?;
    let dim = spec.big_dim();
    let monomial = if a.monomial.is_empty() { vec![0; dim] } else { a.monomial.clone() };
    if monomial.len() != dim || monomial.iter().any(|&m| m < 0) {
        return Err(CliError::Usage(format!("--monomial needs {dim} non-negative exponents")));
    }
    let tensor = matches!(a.geometry, GeometryName::TensorSimplex);
    let (decay, mono) = (a.decay, monomial.clone());
    let f = move |y: &[f64]| {
        let tr = if tensor { y.iter().sum::<f64>() } else { 2.0 * y[0] };
        let m: f64 = y.iter().zip(&mono).map(|(c, &e)| c.powi(e)).product();
        Complex64::new((-decay * tr).exp() * m, 0.0)
    };
    let values = sbo_apply(&spec, pullback(&spec, f), &points, a.order).map_err(usage)?;
    let geometry = value_name(a.geometry);
    let trace = if tensor { "y_1 + … + y_n" } else { "2 y_0" };
    let bytes = match a.output.format {
        Format::Json => json_bytes(&json!({
            "geometry": geometry,
            "params": params,
            "test_function": {
                "formula": "exp(−c·tr(y))·∏ y_i^{m_i}",
                "trace": trace,
                "decay": a.decay,
                "monomial": monomial,
            },
            "order": a.order,
            "points": points,
            "values": values.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
        }))?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["point", "re", "im"])?;
            for (x, z) in points.iter().zip(&values) {
                w.write_record([join(x, ","), format!("{:?}", z.re), format!("{:?}", z.im)])?;
            }
            w.into_inner().map_err(|e| CliError::Io(e.into_error()))?
        }
    };
    emit(&a.output, &bytes)
}
