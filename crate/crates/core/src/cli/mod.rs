//! Scenario runner behind the `dubois` binary.

mod run;
mod scenario;

use std::fmt::Write as _;

use rand::rngs::StdRng;
use rand::SeedableRng;

pub use run::{run_scenario, CheckEntry, Report, Verdict};
pub use scenario::{parse_scenario, Check, Format, ModelChoice, Scenario, ScenarioError, Violation};

use crate::complexes::{cohomology_dims, cone, quasi_iso, ChainMap};
use crate::dubois::{build_tower, zero_wedge_collapse, WedgeOperator};
use crate::filtered::bete_filtration;
use crate::report::{CheckReport, CheckResult};
use crate::testing::{random_complex, random_matrix};

/// Exit code for usage and parse errors.
pub const EXIT_USAGE: i32 = 2;

/// Text is a fixed-width table; JSON is one object with the fields of
/// [`Report`] in declaration order.
pub fn emit_report(r: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => emit_text(r),
    }
}

fn emit_text(r: &Report) -> String {
    let mut out = String::new();
    let s = &r.scenario;
    let bound = s.bound.map(|d| format!(" D={d}")).unwrap_or_default();
    let _ = writeln!(out, "scenario: model={}{bound} p_min={}", s.model.name(), s.p_min);
    let _ = writeln!(out, "{:<20} {:>4}  {:<15} {:<10} {:>6}  detail", "check", "p", "status", "evidence", "ms");
    for c in &r.checks {
        for res in &c.results {
            let p = res.p.map(|p| p.to_string()).unwrap_or_else(|| "-".into());
            let _ = writeln!(
                out,
                "{:<20} {:>4}  {:<15} {:<10} {:>6}  {}",
                c.name,
                p,
                res.status.as_str(),
                res.evidence.as_str(),
                c.ms,
                res.detail
            );
        }
    }
    let verdict = if r.passed() { "pass" } else { "fail" };
    let _ = writeln!(out, "verdict: {verdict}");
    out
}

/// Outcome of `dubois selftest`.
#[derive(Debug, Clone)]
pub struct Selftest {
    pub scenarios: Vec<Report>,
    pub invariants: CheckEntry,
}

impl Selftest {
    pub fn passed(&self) -> bool {
        self.scenarios.iter().all(Report::passed) && self.invariants.passed()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for r in &self.scenarios {
            out.push_str(&emit_text(r));
            out.push('\n');
        }
        for res in &self.invariants.results {
            let _ = writeln!(out, "{}: {} ({}, {} ms)", self.invariants.name, res.status.as_str(), res.detail, self.invariants.ms);
        }
        let _ = writeln!(out, "selftest: {}", if self.passed() { "pass" } else { "fail" });
        out
    }
}

/// Built-in invariant suite: both models at `D = 2` through every check,
/// plus randomized kernel invariants on small complexes.
pub fn selftest() -> Selftest {
    let smooth = parse_scenario(
        b"model = smooth_plane\nD = 2\np_min = -2\nchecks = ses,subcomplex,assoc_graded,abs_to_rel,stationary,functorial,fiber_restriction\n",
    )
    .expect("built-in scenario");
    let nodal = parse_scenario(
        b"model = nodal_union\nD = 2\np_min = -2\nchecks = ses,subcomplex,assoc_graded,abs_to_rel,stationary,functorial\n",
    )
    .expect("built-in scenario");
    let here = std::path::Path::new(".");
    Selftest {
        scenarios: vec![run_scenario(&smooth, here), run_scenario(&nodal, here)],
        invariants: random_invariants(200),
    }
}

/// `count` random complexes: `d² = 0`, cohomology matches the construction, Euler
/// characteristics agree, cones of identities are acyclic and the tower of
/// the zero wedge on the bête filtration splits.
pub fn random_invariants(count: usize) -> CheckEntry {
    let start = std::time::Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut report = CheckReport::new("random_invariants");
    let mut failures = Vec::new();
    for i in 0..count {
        let (c, expected) = random_complex(&mut rng, 0, 3, 4);
        let mut ok = c.validate().unwrap_or(false);
        let h = cohomology_dims(&c).unwrap_or_default();
        ok &= expected.iter().all(|(m, d)| h.get(m).copied().unwrap_or(0) == *d);
        let chi_h: i64 = h.iter().map(|(m, d)| if m % 2 == 0 { *d as i64 } else { -(*d as i64) }).sum();
        ok &= chi_h == c.euler_characteristic();
        let id = ChainMap::identity(&c);
        ok &= cone(&id).and_then(|k| cohomology_dims(&k.complex)).map(|h| h.values().all(|&d| d == 0)).unwrap_or(false);
        ok &= quasi_iso(&id).unwrap_or(false);
        let m = random_matrix(&mut rng, 3, 2, 3);
        ok &= m.rank() + m.kernel_basis().cols() == m.cols();
        let f = bete_filtration(&c);
        ok &= build_tower(&f, &WedgeOperator::zero(f.clone()), -1)
            .and_then(|t| zero_wedge_collapse(&t))
            .unwrap_or(false);
        ok &= (&m * &m.kernel_basis()).is_zero() || m.kernel_basis().cols() == 0;
        if !ok {
            failures.push(i);
        }
    }
    report.push(CheckResult::new(
        None,
        failures.is_empty(),
        crate::report::Evidence::Exact,
        format!("{count} instances, failing: {failures:?}"),
    ));
    CheckEntry { name: report.name, results: report.results, ms: start.elapsed().as_millis() as u64 }
}
