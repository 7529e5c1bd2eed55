//! Verification harness: named suites of numerical and exact checks, each
//! producing a list of [`CheckResult`]s that can be serialized as a report.
//!
//! Suites are numbered after the acceptance criteria they cover. All
//! randomness is drawn from ChaCha8 streams derived from [`Config::seed`],
//! so a fixed configuration always yields the same report.

mod algebra;
mod polys;
mod transforms;

use std::collections::BTreeMap;
use std::error::Error;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

/// Report schema version.
pub const REPORT_VERSION: &str = "1";

/// Suite names in criterion order. The last one is exploratory and does not
/// gate the overall verdict.
pub const SUITES: [&str; 15] = [
    "jordan",
    "strat",
    "gamma",
    "bases",
    "factorization",
    "bessel-eigen",
    "strat-bessel",
    "juhl",
    "integrals",
    "diagrams",
    "intertwining",
    "negative-control",
    "adjointness",
    "multiplicity",
    "hankel",
];

/// Errors raised by the harness itself.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    /// A suite name that is not in [`SUITES`].
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

/// Run-time options shared by all suites.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Config {
    /// Seed for every randomized point set and parameter sample.
    pub seed: u64,
    /// Tolerance overrides keyed by full check name or by suite name.
    pub tol: BTreeMap<String, f64>,
    /// Quadrature points per dimension, replacing each check's default.
    pub order: Option<usize>,
    /// Record wall-clock times; off by default so reports are reproducible.
    pub timings: bool,
}

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    /// `suite.check` name.
    pub name: String,
    /// The formula or statement being checked.
    pub anchor: String,
    /// Parameters of the check.
    pub params: Value,
    /// Measured defect (or count of failing cases for exact checks).
    pub value: f64,
    /// Largest accepted value.
    pub tolerance: f64,
    /// `value ≤ tolerance`.
    pub pass: bool,
    /// Wall-clock time, zero unless timings are enabled.
    pub runtime_ms: u64,
    /// Whether a failure makes the run fail.
    pub gating: bool,
}

/// A full verification report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    /// Schema version.
    pub version: String,
    /// Seed used for all randomized checks.
    pub seed: u64,
    /// Results in suite order.
    pub checks: Vec<CheckResult>,
}

impl Report {
    /// True when every gating check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass || !c.gating)
    }

    /// Names of the gating checks that failed.
    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| c.gating && !c.pass).map(|c| c.name.as_str()).collect()
    }
}

/// Criterion number (1-based) of a suite.
pub fn criterion(suite: &str) -> Option<usize> {
    SUITES.iter().position(|s| *s == suite).map(|i| i + 1)
}

/// Expands a comma-separated filter (`all` selects every suite).
pub fn select_suites(filter: &str) -> Result<Vec<&'static str>, VerifyError> {
    let mut out = Vec::new();
    for part in filter.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if part == "all" {
            return Ok(SUITES.to_vec());
        }
        let s = SUITES.iter().find(|s| **s == part).ok_or_else(|| VerifyError::UnknownSuite(part.to_string()))?;
        if !out.contains(s) {
            out.push(*s);
        }
    }
    if out.is_empty() {
        return Err(VerifyError::UnknownSuite(filter.to_string()));
    }
    out.sort_by_key(|s| criterion(s));
    Ok(out)
}

/// Runs one suite.
pub fn run_suite(name: &str, config: &Config) -> Result<Vec<CheckResult>, VerifyError> {
    let idx = criterion(name).ok_or_else(|| VerifyError::UnknownSuite(name.to_string()))?;
    let mut ctx = Ctx { config, suite: SUITES[idx - 1], index: idx as u64, out: Vec::new() };
    match ctx.suite {
        "jordan" => algebra::jordan(&mut ctx),
        "strat" => algebra::strat(&mut ctx),
        "gamma" => algebra::gamma(&mut ctx),
        "bases" => polys::bases(&mut ctx),
        "factorization" => polys::factorization(&mut ctx),
        "bessel-eigen" => polys::bessel_eigen(&mut ctx),
        "strat-bessel" => polys::strat_bessel(&mut ctx),
        "juhl" => polys::juhl(&mut ctx),
        "integrals" => polys::integrals(&mut ctx),
        "diagrams" => transforms::diagrams(&mut ctx),
        "intertwining" => transforms::intertwining(&mut ctx),
        "negative-control" => transforms::negative_control(&mut ctx),
        "adjointness" => transforms::adjointness(&mut ctx),
        "multiplicity" => transforms::multiplicity(&mut ctx),
        _ => transforms::hankel(&mut ctx),
    }
    Ok(ctx.out)
}

/// Runs the suites selected by `filter` in parallel and collects the results
/// in criterion order.
pub fn run(filter: &str, config: &Config) -> Result<Report, VerifyError> {
    let suites = select_suites(filter)?;
    let parts: Vec<Vec<CheckResult>> = suites.par_iter().map(|s| run_suite(s, config)).collect::<Result<_, _>>()?;
    Ok(Report { version: REPORT_VERSION.to_string(), seed: config.seed, checks: parts.into_iter().flatten().collect() })
}

type CheckValue = Result<f64, Box<dyn Error>>;

/// Per-suite state: configuration, seeding and the result list.
pub(crate) struct Ctx<'a> {
    config: &'a Config,
    suite: &'static str,
    index: u64,
    out: Vec<CheckResult>,
}

impl Ctx<'_> {
    /// Quadrature points per dimension: the configured order or `default`.
    fn npts(&self, default: usize) -> usize {
        self.config.order.unwrap_or(default)
    }

    /// An independent random stream for this suite.
    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed);
        rng.set_stream(self.index * 1000 + stream);
        rng
    }

    fn tolerance(&self, name: &str, default: f64) -> f64 {
        self.config.tol.get(name).or_else(|| self.config.tol.get(self.suite)).copied().unwrap_or(default)
    }

    /// Runs a gating check.
    fn check<F: FnOnce() -> CheckValue>(&mut self, name: &str, anchor: &str, params: Value, tol: f64, f: F) {
        self.record(name, anchor, params, tol, true, f);
    }

    /// Runs a check that is reported but never fails the run.
    fn explore<F: FnOnce() -> CheckValue>(&mut self, name: &str, anchor: &str, params: Value, tol: f64, f: F) {
        self.record(name, anchor, params, tol, false, f);
    }

    fn record<F: FnOnce() -> CheckValue>(
        &mut self,
        name: &str,
        anchor: &str,
        mut params: Value,
        tol: f64,
        gating: bool,
        f: F,
    ) {
        let full = format!("{}.{}", self.suite, name);
        let tolerance = self.tolerance(&full, tol);
        let start = Instant::now();
        let value = match f() {
            Ok(v) if v.is_nan() => f64::INFINITY,
            Ok(v) => v,
            Err(e) => {
                if let Value::Object(m) = &mut params {
                    m.insert("error".into(), Value::String(e.to_string()));
                }
                f64::INFINITY
            }
        };
        let runtime_ms = if self.config.timings { start.elapsed().as_millis() as u64 } else { 0 };
        self.out.push(CheckResult {
            name: full,
            anchor: anchor.to_string(),
            params,
            value,
            tolerance,
            pass: value <= tolerance,
            runtime_ms,
            gating,
        });
    }
}

/// `|a − b| / max(|b|, tiny)`.
fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// `1.0` for a failed boolean condition, `0.0` otherwise; used by exact checks
/// that count failing cases.
fn fails(ok: bool) -> f64 {
    if ok {
        0.0
    } else {
        1.0
    }
}
