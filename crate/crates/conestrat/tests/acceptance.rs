//! One pass/fail line per acceptance criterion. Criteria 1–14 gate; the
//! Hankel criterion is reported only.

use conestrat::verify::{self, Config, SUITES};

#[test]
fn acceptance_criteria() {
    let report = verify::run("all", &Config::default()).expect("all suites are known");
    let mut gating_failures = Vec::new();
    for (i, suite) in SUITES.iter().enumerate() {
        let prefix = format!("{suite}.");
        let checks: Vec<_> = report.checks.iter().filter(|c| c.name.starts_with(&prefix)).collect();
        assert!(!checks.is_empty(), "suite {suite} produced no checks");
        let failed: Vec<&str> = checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
        let worst = checks.iter().map(|c| c.value / c.tolerance.max(f64::MIN_POSITIVE)).fold(0.0f64, f64::max);
        let gating = checks.iter().all(|c| c.gating);
        let verdict = if failed.is_empty() { "PASS" } else { "FAIL" };
        let kind = if gating { "" } else { " (non-gating)" };
        println!(
            "criterion {:>2} {suite:<16} {verdict}{kind}: {} checks, worst value/tolerance {worst:.3e}{}",
            i + 1,
            checks.len(),
            if failed.is_empty() { String::new() } else { format!(", failing: {}", failed.join(" ")) }
        );
        if gating && !failed.is_empty() {
            gating_failures.push(i + 1);
        }
    }
    assert!(gating_failures.is_empty(), "gating criteria failed: {gating_failures:?}");
    assert!(report.passed());
}
