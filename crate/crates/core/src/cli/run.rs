//! Executes a scenario against a frozen tower.

use std::path::Path;
use std::time::Instant;

use serde::Serialize;

use crate::dubois::{
    abs_to_rel_triangles, build_tower, check_assoc_graded, induce_tower_morphism, stationary_check,
    validate_wedge, verify_base_case, verify_functorial_diagram, verify_ses_tower, verify_subcomplex, DuBoisTower,
    FilteredMap,
};
use crate::filtered::validate_filtration;
use crate::models::{
    build_nodal_normalization, build_nodal_union_family, build_smooth_plane_family, custom_from_json,
    fiber_restriction_smooth_check, smooth_reflection, ModelBundle, ModelError, ModelKind,
};
use crate::report::{CheckReport, CheckResult, Evidence, Status};

use super::scenario::{Check, ModelChoice, Scenario};

#[derive(Debug, Clone, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub results: Vec<CheckResult>,
    pub ms: u64,
}

impl CheckEntry {
    fn timed(report: CheckReport, ms: u64) -> Self {
        CheckEntry { name: report.name, results: report.results, ms }
    }

    pub fn passed(&self) -> bool {
        self.results.iter().all(CheckResult::passed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub scenario: Scenario,
    pub checks: Vec<CheckEntry>,
    pub verdict: Verdict,
}

impl Report {
    pub fn new(scenario: Scenario, checks: Vec<CheckEntry>) -> Self {
        let verdict = if checks.iter().all(CheckEntry::passed) { Verdict::Pass } else { Verdict::Fail };
        Report { scenario, checks, verdict }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }
}

fn single(name: &str, result: CheckResult) -> CheckEntry {
    let mut r = CheckReport::new(name);
    r.push(result);
    CheckEntry::timed(r, 0)
}

fn load_model(s: &Scenario, base_dir: &Path) -> Result<ModelBundle, ModelError> {
    match s.model {
        ModelChoice::SmoothPlane => build_smooth_plane_family(s.bound.unwrap_or(2)),
        ModelChoice::NodalUnion => build_nodal_union_family(s.bound.unwrap_or(2)),
        ModelChoice::Custom => {
            let file = s.file.as_ref().ok_or_else(|| ModelError::Format("no model file given".into()))?;
            let path = if file.is_absolute() { file.clone() } else { base_dir.join(file) };
            let text = std::fs::read_to_string(&path)
                .map_err(|e| ModelError::Format(format!("{}: {e}", path.display())))?;
            custom_from_json(&text)
        }
    }
}

/// Input validation entries, in a fixed order. Later ones are only run when
/// the earlier ones pass, since they presuppose them.
fn validation_entries(b: &ModelBundle) -> Vec<CheckEntry> {
    let mut out = Vec::new();
    let c = b.filtered.ambient();
    let complex_ok = match c.validate() {
        Ok(true) => CheckResult::new(None, true, Evidence::Exact, "d^2 = 0"),
        Ok(false) => {
            let m = c.degrees().find(|&m| !(&*c.d(m + 1) * &*c.d(m)).is_zero()).unwrap_or(c.lo());
            CheckResult::failed(None, format!("d^{} d^{m} != 0", m + 1))
        }
        Err(e) => CheckResult::failed(None, e.to_string()),
    };
    let ok = complex_ok.passed();
    out.push(single("validate_complex", complex_ok));
    if !ok {
        return out;
    }
    let filtration = match validate_filtration(&b.filtered) {
        Ok(()) => CheckResult::new(None, true, Evidence::Exact, "valid filtration"),
        Err(e) => CheckResult::failed(None, e.to_string()),
    };
    let ok = filtration.passed();
    out.push(single("validate_filtration", filtration));
    if !ok {
        return out;
    }
    let wedge = match validate_wedge(&b.wedge) {
        Ok(()) => CheckResult::new(None, true, Evidence::Exact, "valid wedge"),
        Err(e) => CheckResult::failed(None, e.to_string()),
    };
    out.push(single("validate_wedge", wedge));
    out
}

/// Runs the scenario. `base_dir` resolves a relative model file. Internal
/// errors become failed entries; this never panics on bad input.
pub fn run_scenario(s: &Scenario, base_dir: &Path) -> Report {
    let bundle = match load_model(s, base_dir) {
        Ok(b) => b,
        Err(e) => return Report::new(s.clone(), vec![single("model", CheckResult::failed(None, e.to_string()))]),
    };
    let mut entries = validation_entries(&bundle);
    if !entries.iter().all(CheckEntry::passed) || entries.len() < 3 {
        for c in &s.checks {
            entries.push(single(c.name(), CheckResult::failed(None, "not run: invalid model")));
        }
        return Report::new(s.clone(), entries);
    }
    let start = Instant::now();
    let tower = match build_tower(&bundle.filtered, &bundle.wedge, s.p_min) {
        Ok(t) => t,
        Err(e) => {
            entries.push(single("tower", CheckResult::failed(None, e.to_string())));
            return Report::new(s.clone(), entries);
        }
    };
    let mut tower_entry = single("tower", CheckResult::new(None, true, Evidence::Exact, "built"));
    tower_entry.ms = start.elapsed().as_millis() as u64;
    entries.push(tower_entry);

    // Checks only read the tower, so they run side by side.
    let results: Vec<Vec<CheckEntry>> = std::thread::scope(|scope| {
        let handles: Vec<_> = s
            .checks
            .iter()
            .map(|&c| {
                let (bundle, tower) = (&bundle, &tower);
                scope.spawn(move || run_check(c, s, bundle, tower))
            })
            .collect();
        handles
            .into_iter()
            .zip(&s.checks)
            .map(|(h, c)| {
                h.join().unwrap_or_else(|_| vec![single(c.name(), CheckResult::failed(None, "verifier panicked"))])
            })
            .collect()
    });
    entries.extend(results.into_iter().flatten());
    Report::new(s.clone(), entries)
}

fn run_check(check: Check, s: &Scenario, bundle: &ModelBundle, tower: &DuBoisTower) -> Vec<CheckEntry> {
    let start = Instant::now();
    let reports: Vec<CheckReport> = match check {
        Check::Ses => vec![verify_ses_tower(tower), verify_base_case(tower)],
        Check::Subcomplex => vec![verify_subcomplex(tower)],
        Check::AssocGraded => vec![bundle
            .graded_references(tower)
            .map_err(|e| e.to_string())
            .and_then(|refs| check_assoc_graded(tower, &refs).map_err(|e| e.to_string()))
            .unwrap_or_else(|e| failed_report(check, e))],
        Check::AbsToRel => vec![abs_to_rel_triangles(tower).unwrap_or_else(|e| failed_report(check, e.to_string()))],
        Check::Stationary => vec![stationary_report(bundle, tower)],
        Check::Functorial => vec![functorial_report(bundle, tower).unwrap_or_else(|e| failed_report(check, e))],
        Check::FiberRestriction => vec![fiber_restriction_smooth_check(bundle, &s.fiber_t0)
            .unwrap_or_else(|e| failed_report(check, e.to_string()))],
    };
    let ms = start.elapsed().as_millis() as u64;
    reports.into_iter().map(|r| CheckEntry::timed(r, ms)).collect()
}

fn failed_report(check: Check, detail: String) -> CheckReport {
    let mut r = CheckReport::new(check.name());
    r.push(CheckResult::failed(None, detail));
    r
}

/// Asserted for the smooth family only; other models record the value.
fn stationary_report(bundle: &ModelBundle, tower: &DuBoisTower) -> CheckReport {
    let mut r = CheckReport::new(Check::Stationary.name());
    match stationary_check(tower) {
        Ok(value) => {
            let mut result = CheckResult::new(
                None,
                value,
                Evidence::Exact,
                format!("delta(-1) and delta(-2) quasi-isomorphisms: {value}"),
            );
            if bundle.kind != ModelKind::SmoothPlane {
                result.status = Status::observed(value);
            }
            r.push(result);
        }
        Err(e) => r.push(CheckResult::failed(None, e.to_string())),
    }
    r
}

/// Smooth plane: the reflection `x ↦ -x`. Nodal: the normalization.
/// Custom: the identity.
fn functorial_report(bundle: &ModelBundle, tower: &DuBoisTower) -> Result<CheckReport, String> {
    let s = |e: &dyn std::fmt::Display| e.to_string();
    let (gamma, target): (FilteredMap, Option<DuBoisTower>) = match bundle.kind {
        ModelKind::SmoothPlane => (smooth_reflection(bundle).map_err(|e| s(&e))?, None),
        ModelKind::NodalUnion => {
            let bound = bundle.bound.ok_or_else(|| "nodal model without coefficient bound".to_string())?;
            let (y, gamma) = build_nodal_normalization(bound).map_err(|e| s(&e))?;
            let ty = build_tower(&y.filtered, &y.wedge, tower.p_min()).map_err(|e| s(&e))?;
            (gamma, Some(ty))
        }
        ModelKind::NodalNormalization | ModelKind::Custom => (FilteredMap::identity(&bundle.filtered), None),
    };
    let ty = target.as_ref().unwrap_or(tower);
    let alpha = induce_tower_morphism(&gamma, tower, ty).map_err(|e| s(&e))?;
    Ok(verify_functorial_diagram(&alpha, &gamma, tower, ty))
}
