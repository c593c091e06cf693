//! `X = A^2` with coordinates `(t, x)` over `C = A^1`, `f = t`.

use std::collections::BTreeMap;

use crate::complexes::{cohomology_dims, quotient_complex, ChainMap, CochainComplex};
use crate::dubois::{DuBoisTower, FilteredMap, WedgeOperator, TOWER_WEIGHT};
use crate::filtered::bete_filtration;
use crate::linalg::{Rat, RatMatrix};
use crate::report::{CheckReport, CheckResult};

use super::forms::{truncated_de_rham, FormSpace};
use super::{in_degree_zero, GradedSpec, ModelBundle, ModelError, ModelKind, Result};

const T: usize = 0;
const X: usize = 1;

fn absolute(bound: u32) -> FormSpace {
    FormSpace::full(&["t", "x"], bound)
}

fn relative(bound: u32) -> FormSpace {
    FormSpace::new(&["t", "x"], &[X], bound)
}

/// `σ_{≥p}` of the relative complex (forms in `dx` only), tower weight.
fn relative_truncated(rel: &FormSpace, p: i64) -> CochainComplex {
    let full = rel.complex(TOWER_WEIGHT);
    CochainComplex::from_fn(
        0,
        full.hi(),
        TOWER_WEIGHT,
        |m| if m >= p { full.dim(m) } else { 0 },
        |m| {
            if m >= p {
                full.d(m).into_owned()
            } else {
                RatMatrix::zeros(if m + 1 >= p { full.dim(m + 1) } else { 0 }, 0)
            }
        },
    )
    .expect("truncation keeps shapes")
}

/// Bête filtration of the truncated `Ω^•_X`, wedge with `dt`, relative
/// references `σ_{≥p} Ω^•_{X/C}` and contraction by `∂/∂t` as comparison.
pub fn build_smooth_plane_family(bound: u32) -> Result<ModelBundle> {
    if bound < 2 {
        return Err(ModelError::BoundTooSmall { min: 2, got: bound });
    }
    let abs = absolute(bound);
    let rel = relative(bound);
    let complex = abs.complex(0);
    let filtered = bete_filtration(&complex);
    let wedge = WedgeOperator::from_fn(filtered.clone(), |m| abs.wedge_right(T, m as usize))?;
    let labels = (0..=2).map(|k| (k as i64, abs.labels(k))).collect();

    let mut relative_refs = BTreeMap::new();
    for p in -2..=2 {
        relative_refs.insert(p, relative_truncated(&rel, p));
    }
    let mut graded = BTreeMap::new();
    for p in 0..=1usize {
        graded.insert(
            p as i64,
            GradedSpec { complex: in_degree_zero(rel.dim(p as i64)), first_block: Some(abs.contraction(T, p + 1, &rel)) },
        );
    }
    Ok(ModelBundle::new(ModelKind::SmoothPlane, Some(bound), filtered, wedge, labels)
        .with_references(relative_refs, graded))
}

/// `Φ_p : E^p -> σ_{≥p} Ω^•_{X/C}`, defined recursively by
/// `Φ_p(a, e) = ι_{∂t}(a) + ∂_t Φ_{p+1}(e)` on `F^{p+1}[1] ⊕ E^{p+1}`, and
/// `Φ_p = 0` for `p ≥ n`.
pub fn smooth_relative_comparison(bundle: &ModelBundle, tower: &DuBoisTower, p: i64) -> Result<ChainMap> {
    let bound = match (bundle.kind, bundle.bound) {
        (ModelKind::SmoothPlane, Some(b)) => b,
        _ => return Err(ModelError::NotSmooth),
    };
    let abs = absolute(bound);
    let rel = relative(bound);
    let mut phi = ChainMap::zero(&tower.e(tower.n())?, &relative_truncated(&rel, tower.n()), 0);
    for q in (p..tower.n()).rev() {
        let source = tower.e(q)?;
        let target = relative_truncated(&rel, q);
        let include = &tower.f_level(q + 1)?.include;
        let upper = phi;
        phi = ChainMap::from_fn(source.clone(), target.clone(), 0, |m| {
            if target.dim(m) == 0 || m < 0 {
                return RatMatrix::zeros(target.dim(m), source.dim(m));
            }
            let k = m as usize;
            let first = &abs.contraction(T, k + 1, &rel) * &*include.mat(m + 1);
            let upper_m = upper.mat(m);
            let second = if upper_m.rows() == target.dim(m) {
                &rel.partial(T, k) * &*upper_m
            } else {
                RatMatrix::zeros(target.dim(m), upper_m.cols())
            };
            first.hstack(&second).expect("comparison blocks")
        })?;
    }
    Ok(phi)
}

/// Pull-back along `(t, x) ↦ (t, -x)`, a filtered automorphism commuting
/// with the wedge.
pub fn smooth_reflection(bundle: &ModelBundle) -> Result<FilteredMap> {
    let bound = match (bundle.kind, bundle.bound) {
        (ModelKind::SmoothPlane, Some(b)) => b,
        _ => return Err(ModelError::NotSmooth),
    };
    let abs = absolute(bound);
    let c = bundle.filtered.ambient().clone();
    let map = ChainMap::from_fn(c.clone(), c, 0, |m| {
        let k = m as usize;
        abs.map_to(k, &abs, k, |mono, subset| {
            let flips = mono[X] as usize + usize::from(subset.contains(&X));
            let sign = if flips % 2 == 0 { 1 } else { -1 };
            vec![(crate::linalg::rat(sign), mono.clone(), subset.to_vec())]
        })
    })?;
    Ok(FilteredMap::new(bundle.filtered.clone(), bundle.filtered.clone(), map)?)
}

/// Restricts the relative complex to the fiber `t = t0` (substitution on
/// coefficients, i.e. the quotient by the kernel of the substitution map)
/// and compares dimensions and cohomology with the fiber's own truncated
/// de Rham complex.
pub fn fiber_restriction_smooth_check(bundle: &ModelBundle, t0: &Rat) -> Result<CheckReport> {
    let bound = match (bundle.kind, bundle.bound) {
        (ModelKind::SmoothPlane, Some(b)) => b,
        _ => return Err(ModelError::NotSmooth),
    };
    let rel = relative(bound);
    let fiber_space = FormSpace::full(&["x"], bound);
    let source = rel.complex(0);
    let fiber = fiber_space.complex(0);
    let substitution = ChainMap::from_fn(source.clone(), fiber.clone(), 0, |m| {
        let k = m as usize;
        rel.map_to(k, &fiber_space, k, |mono, subset| {
            let coeff = num_traits::pow::pow(t0.clone(), mono[T] as usize);
            let forms = subset.iter().map(|_| 0).collect();
            vec![(coeff, vec![mono[X]], forms)]
        })
    })?;
    let mut report = CheckReport::new("fiber_restriction");
    let chain = substitution.is_chain_map();
    report.push(CheckResult::new(None, chain, crate::report::Evidence::Exact, "substitution is a chain map"));
    let kernel = |m: i64| substitution.mat(m).kernel_basis();
    let specialized = quotient_complex(&source, kernel)?.complex;
    let reference = truncated_de_rham(1, bound);
    let dims_ok = specialized.degrees().chain(reference.degrees()).all(|m| specialized.dim(m) == reference.dim(m));
    report.push(CheckResult::new(
        None,
        dims_ok,
        crate::report::Evidence::Exact,
        format!("fiber dims {:?} vs {:?}", specialized.dims(), reference.dims()),
    ));
    let (hs, hr) = (cohomology_dims(&specialized)?, cohomology_dims(&reference)?);
    report.push(CheckResult::new(
        None,
        hs == hr,
        crate::report::Evidence::DimsMatch,
        format!("fiber cohomology {hs:?} vs {hr:?}"),
    ));
    Ok(report)
}
