use std::collections::BTreeMap;

use crate::complexes::{
    direct_sum, dims_match, quasi_iso, quotient_complex, ChainMap, CochainComplex, QuotientComplex,
};
use crate::filtered::check_ses;
use crate::linalg::RatMatrix;
use crate::report::{CheckReport, CheckResult, Evidence};

use super::tower::{DuBoisTower, TOWER_WEIGHT};
use super::{DuboisError, Result};

/// Collects the names of failed sub-claims of one entry.
#[derive(Default)]
struct Claims {
    failed: Vec<String>,
}

impl Claims {
    fn require(&mut self, ok: bool, what: &str) {
        if !ok {
            self.failed.push(what.to_string());
        }
    }

    fn require_result<E: std::fmt::Display>(&mut self, r: std::result::Result<bool, E>, what: &str) {
        match r {
            Ok(ok) => self.require(ok, what),
            Err(e) => self.failed.push(format!("{what}: {e}")),
        }
    }

    fn finish(self, p: i64, evidence: Evidence) -> CheckResult {
        let ok = self.failed.is_empty();
        let detail = if ok { "ok".to_string() } else { self.failed.join("; ") };
        CheckResult::new(Some(p), ok, evidence, detail)
    }
}

fn entry(p: i64, body: impl FnOnce(&mut Claims) -> Result<()>) -> CheckResult {
    let mut claims = Claims::default();
    match body(&mut claims) {
        Ok(()) => claims.finish(p, Evidence::Exact),
        Err(e) => CheckResult::failed(Some(p), e.to_string()),
    }
}

/// Matrix equality of two degree-0 maps with the same source window.
fn same_map(a: &ChainMap, b: &ChainMap) -> bool {
    a.same_matrices(b)
}

/// The exact sequences `0 -> E^{p+1} -> E^p ⊗ L -> F^{p+1}[1] -> 0`,
/// together with `w'_p ∘ w''_p = ∧_p`, `w''_p ∘ ∧'_{p-1} = 0` and the
/// Euler characteristic count, for every stored `p`.
pub fn verify_ses_tower(t: &DuBoisTower) -> CheckReport {
    let mut report = CheckReport::new("ses");
    for p in t.indices() {
        report.push(entry(p, |c| {
            let (include, project) = t.ses(p)?;
            c.require_result(check_ses(include, project), "row exact");
            let composite = t.w(p)?.then(project)?;
            c.require(same_map(&composite, t.wedge_level(p)?), "w' w'' = wedge");
            if p > t.p_min() {
                let prev = t.wedge_level(p - 1)?;
                let w = t.w(p)?;
                let vanishes = prev.source().degrees().all(|m| (&*w.mat(m + 1) * &*prev.mat(m)).is_zero());
                c.require(vanishes, "w'' wedge' = 0");
            }
            let e = t.e(p)?;
            let chi = e.euler_characteristic();
            let upper = t.e(p + 1)?.euler_characteristic();
            let f1 = t.f_level(p + 1)?.complex.shift(1).euler_characteristic();
            c.require(chi == upper + f1, "euler characteristic");
            Ok(())
        }));
    }
    report
}

/// `E^{n-1} = F^n[1] ⊗ L^{-1}` as matrices.
pub fn verify_base_case(t: &DuBoisTower) -> CheckReport {
    let mut report = CheckReport::new("base_case");
    let p = t.n() - 1;
    if p < t.p_min() {
        return report;
    }
    report.push(entry(p, |c| {
        let expected = t.f_level(t.n())?.complex.shift(1).twist(TOWER_WEIGHT);
        c.require(t.e(p)? == expected, "E^{n-1} = F^n[1]");
        Ok(())
    }));
    report
}

/// `δ_p : E^{p+1} -> E^p` is an injective chain map, and the morphism of
/// exact rows with vertical maps `(δ_{p+1}, δ_p, F^{p+2}[1] -> F^{p+1}[1])`
/// commutes, as does the square `δ_{p+1} w_{p+2} = w_{p+1} ι`.
pub fn verify_subcomplex(t: &DuBoisTower) -> CheckReport {
    let mut report = CheckReport::new("subcomplex");
    for p in t.p_min()..t.n() {
        report.push(entry(p, |c| {
            let delta = t.delta(p)?;
            c.require(delta.is_chain_map(), "delta chain map");
            c.require(delta.is_injective(), "delta injective");
            let (inc_up, proj_up) = t.ses(p + 1)?;
            let (inc, proj) = t.ses(p)?;
            let delta_up = t.delta(p + 1)?;
            let left = delta_up.then(inc)?;
            let right = inc_up.then(delta)?;
            c.require(same_map(&left, &right), "left square");
            let f_incl = t.f_inclusion(p + 1)?.twist(TOWER_WEIGHT).shift(1);
            let left = delta.then(proj)?;
            let right = proj_up.then(&f_incl)?;
            c.require(same_map(&left, &right), "right square");
            let f_incl = t.f_inclusion(p + 1)?.twist(TOWER_WEIGHT);
            let left = if p + 2 <= t.n() {
                t.w(p + 2)?.then(delta_up)?
            } else {
                ChainMap::zero(&t.f_level(p + 2)?.complex.twist(TOWER_WEIGHT), &t.e(p + 1)?, 0)
            };
            let right = f_incl.then(t.w(p + 1)?)?;
            c.require(same_map(&left, &right), "wedge square");
            Ok(())
        }));
    }
    report
}

/// `Gr_E^p = E^p / δ_p(E^{p+1})`.
pub fn graded_quotient(t: &DuBoisTower, p: i64) -> Result<QuotientComplex> {
    let delta = t.delta(p)?;
    Ok(quotient_complex(&t.e(p)?, |m| delta.mat(m).into_owned())?)
}

/// A model's stand-in for the relative graded piece at `p`, with an
/// optional comparison chain map `E^p[p] -> complex` vanishing on
/// `δ_p(E^{p+1})[p]`.
#[derive(Debug, Clone)]
pub struct GradedReference {
    pub complex: CochainComplex,
    pub comparison: Option<ChainMap>,
}

/// For `p_min ≤ p ≤ n - 1`: checks the row
/// `0 -> Gr_E^{p+1} -> Gr_E^p ⊗ L -> Gr_F^{p+1}[1] -> 0` exactly, and for
/// `p ≥ 0` compares `Gr_E^p[p]` with the reference (quasi-isomorphism
/// through the supplied map, else cohomology dimensions).
pub fn check_assoc_graded(t: &DuBoisTower, references: &BTreeMap<i64, GradedReference>) -> Result<CheckReport> {
    if let Some(p) = (t.p_min().max(0)..t.n()).find(|p| !references.contains_key(p)) {
        return Err(DuboisError::MissingReference(p));
    }
    let mut report = CheckReport::new("assoc_graded");
    for p in t.p_min()..t.n() {
        let mut claims = Claims::default();
        let mut evidence = Evidence::Exact;
        if let Some(reference) = references.get(&p).filter(|_| p >= 0) {
            match compare_graded(t, p, reference) {
                Ok((ok, e)) => {
                    claims.require(ok, evidence_claim(e));
                    evidence = e;
                }
                Err(e) => claims.failed.push(format!("comparison: {e}")),
            }
        }
        claims.require_result(nine_lemma_row(t, p), "graded row exact");
        report.push(claims.finish(p, evidence));
    }
    Ok(report)
}

fn evidence_claim(e: Evidence) -> &'static str {
    match e {
        Evidence::Exact => "comparison is a quasi-isomorphism",
        Evidence::DimsMatch => "cohomology dimensions match",
    }
}

fn compare_graded(t: &DuBoisTower, p: i64, reference: &GradedReference) -> Result<(bool, Evidence)> {
    let gr = graded_quotient(t, p)?;
    let shifted = gr.complex.shift(p);
    let Some(cmp) = &reference.comparison else {
        return Ok((dims_match(&shifted, &reference.complex)?, Evidence::DimsMatch));
    };
    if cmp.source() != &t.e(p)?.shift(p) || cmp.target() != &reference.complex || cmp.degree() != 0 {
        return Ok((false, Evidence::Exact));
    }
    if !cmp.is_chain_map() {
        return Ok((false, Evidence::Exact));
    }
    for m in shifted.degrees() {
        if let Some(sub) = gr.sub.get(&(m + p)) {
            if !(&*cmp.mat(m) * sub).is_zero() {
                return Ok((false, Evidence::Exact));
            }
        }
    }
    let induced = ChainMap::from_fn(shifted.clone(), reference.complex.clone(), 0, |m| {
        match gr.pieces.get(&(m + p)) {
            Some(piece) => &*cmp.mat(m) * &piece.section,
            None => RatMatrix::zeros(reference.complex.dim(m), shifted.dim(m)),
        }
    })?;
    Ok((quasi_iso(&induced)?, Evidence::Exact))
}

fn nine_lemma_row(t: &DuBoisTower, p: i64) -> Result<bool> {
    let (include, project) = t.ses(p)?;
    let gr = graded_quotient(t, p)?;
    let gr_up = graded_quotient(t, p + 1)?;
    let f_shift = t.f_level(p + 1)?.complex.twist(TOWER_WEIGHT).shift(1);
    let f_incl = t.f_inclusion(p + 1)?;
    let gr_f = quotient_complex(&f_shift, |m| f_incl.mat(m + 1).into_owned())?;
    let a = crate::complexes::induced_map(include, &gr_up, &gr)?;
    let b = crate::complexes::induced_map(project, &gr, &gr_f)?;
    Ok(check_ses(&a, &b)?)
}

/// For `p_min < p ≤ n`: the row at `p - 1` is exact and
/// `E^{p-1} = cone(w_p)`, so it rotates into the triangle
/// `E^{p-1}[-1] ⊗ L -> F^p -> E^p -> +1`; and `w_p` is the restriction of
/// `w_0 : F^0 -> E^0` along the filtrations.
pub fn abs_to_rel_triangles(t: &DuBoisTower) -> Result<CheckReport> {
    if t.p_min() > -1 {
        return Err(DuboisError::IndexOutOfRange { p: -1, lo: t.p_min(), hi: t.n() });
    }
    let mut report = CheckReport::new("abs_to_rel");
    for p in t.p_min() + 1..=t.n() {
        report.push(entry(p, |c| {
            let (include, project) = t.ses(p - 1)?;
            c.require_result(check_ses(include, project), "rotated row exact");
            let cone = crate::complexes::cone(t.w(p)?)?;
            c.require(cone.complex == t.e(p - 1)?, "E^{p-1} = cone(w_p)");
            let (a, b) = (p.max(0), p.min(0));
            let left = t.w(a)?.then(&t.delta_chain(a, b)?)?;
            let right = t.f_inclusion_chain(a, b)?.then(t.w(b)?)?;
            c.require(same_map(&left, &right), "restriction of w_0");
            Ok(())
        }));
    }
    Ok(report)
}

/// `E^0 = E^{-1} = E^{-2}` up to the inclusions: `δ_{-1}` and `δ_{-2}` are
/// quasi-isomorphisms.
pub fn stationary_check(t: &DuBoisTower) -> Result<bool> {
    if t.p_min() > -2 {
        return Err(DuboisError::IndexOutOfRange { p: -2, lo: t.p_min(), hi: t.n() });
    }
    for p in [-1, -2] {
        if !quasi_iso(t.delta(p)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// With `W = 0`: every `w_p` vanishes and
/// `E^p = F^{p+1}[1] ⊗ L^{-1} ⊕ E^{p+1}` with block-diagonal differential.
pub fn zero_wedge_collapse(t: &DuBoisTower) -> Result<bool> {
    for p in t.indices() {
        if !t.w(p)?.same_matrices(&ChainMap::zero(t.w(p)?.source(), t.w(p)?.target(), 0)) {
            return Ok(false);
        }
        if p >= t.n() {
            continue;
        }
        let f = t.f_level(p + 1)?.complex.shift(1).twist(TOWER_WEIGHT);
        if t.e(p)? != direct_sum(&f, &t.e(p + 1)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}
