use std::collections::BTreeMap;

use crate::complexes::ChainMap;
use crate::filtered::FilteredComplex;
use crate::linalg::{subspace_contains, RatMatrix};
use crate::report::{CheckReport, CheckResult};

use super::tower::{DuBoisTower, TOWER_WEIGHT};
use super::{DuboisError, Result};

/// A filtered chain map `γ : F_X -> F_Y`, given on the ambient complexes.
#[derive(Debug, Clone)]
pub struct FilteredMap {
    source: FilteredComplex,
    target: FilteredComplex,
    ambient: ChainMap,
}

impl FilteredMap {
    /// Checks that `ambient` is a chain map `F_X^0 -> F_Y^0` carrying every
    /// `F_X^p` into `F_Y^p`.
    pub fn new(source: FilteredComplex, target: FilteredComplex, ambient: ChainMap) -> Result<Self> {
        if ambient.source() != source.ambient() || ambient.target() != target.ambient() || ambient.degree() != 0 {
            return Err(crate::complexes::ComplexError::Shape {
                degree: source.ambient().lo(),
                detail: "map does not run between the two ambient complexes".into(),
            }
            .into());
        }
        if let Some(m) = ambient.chain_law_failure() {
            return Err(crate::complexes::ComplexError::NotAChainMap(m).into());
        }
        let top = source.n().max(target.n()) + 1;
        for p in 0..=top {
            for m in source.ambient().degrees() {
                let image = &*ambient.mat(m) * &*source.level(p, m);
                if !subspace_contains(&target.level(p, m), &image)? {
                    return Err(DuboisError::NotFiltered { level: p, degree: m });
                }
            }
        }
        Ok(FilteredMap { source, target, ambient })
    }

    pub fn identity(f: &FilteredComplex) -> Self {
        FilteredMap { source: f.clone(), target: f.clone(), ambient: ChainMap::identity(f.ambient()) }
    }

    pub fn zero(source: &FilteredComplex, target: &FilteredComplex) -> Self {
        FilteredMap {
            source: source.clone(),
            target: target.clone(),
            ambient: ChainMap::zero(source.ambient(), target.ambient(), 0),
        }
    }

    pub fn source(&self) -> &FilteredComplex {
        &self.source
    }

    pub fn target(&self) -> &FilteredComplex {
        &self.target
    }

    pub fn ambient(&self) -> &ChainMap {
        &self.ambient
    }
}

/// `γ_p : F_X^p ⊗ L^{-1} -> F_Y^p ⊗ L^{-1}` in the level bases of the two
/// towers.
fn gamma_level(gamma: &FilteredMap, tx: &DuBoisTower, ty: &DuBoisTower, p: i64) -> Result<ChainMap> {
    let sx = tx.f_level(p)?;
    let sy = ty.f_level(p)?;
    let mut mats = Vec::new();
    for m in sx.complex.degrees() {
        let image = &*gamma.ambient.mat(m) * &*sx.include.mat(m);
        let coords = sy
            .include
            .mat(m)
            .solve(&image)
            .map_err(|_| DuboisError::NotFiltered { level: p, degree: m })?;
        mats.push(coords);
    }
    Ok(ChainMap::new(
        sx.complex.twist(TOWER_WEIGHT),
        sy.complex.twist(TOWER_WEIGHT),
        0,
        mats,
    )?)
}

/// `γ_p` for every stored `p`, keyed by `p`, with `p` running over the
/// tower indices plus `n + 1`.
pub fn gamma_levels(gamma: &FilteredMap, tx: &DuBoisTower, ty: &DuBoisTower) -> Result<BTreeMap<i64, ChainMap>> {
    (tx.p_min()..=tx.n() + 1).map(|p| Ok((p, gamma_level(gamma, tx, ty, p)?))).collect()
}

fn check_compatible(gamma: &FilteredMap, tx: &DuBoisTower, ty: &DuBoisTower) -> Result<()> {
    if tx.p_min() != ty.p_min() || tx.n() != ty.n() {
        return Err(DuboisError::TowerMismatch);
    }
    let (wx, wy) = (tx.wedge(), ty.wedge());
    for m in gamma.source.ambient().degrees() {
        let left = &*gamma.ambient.mat(m + 1) * &*wx.mat(m);
        let right = &*wy.mat(m) * &*gamma.ambient.mat(m);
        if left != right {
            return Err(DuboisError::WedgeIncompatible { degree: m });
        }
    }
    Ok(())
}

/// `α_p : E_X^p -> E_Y^p` by descending recursion: zero for `p ≥ n`, and
/// on the cone `α_p = diag(γ_{p+1}[1], α_{p+1})`.
pub fn induce_tower_morphism(
    gamma: &FilteredMap,
    tx: &DuBoisTower,
    ty: &DuBoisTower,
) -> Result<BTreeMap<i64, ChainMap>> {
    check_compatible(gamma, tx, ty)?;
    let mut alpha: BTreeMap<i64, ChainMap> = BTreeMap::new();
    for p in tx.indices().rev() {
        let (ex, ey) = (tx.e(p)?, ty.e(p)?);
        let map = if p >= tx.n() {
            ChainMap::zero(&ex, &ey, 0)
        } else {
            let g = gamma_level(gamma, tx, ty, p + 1)?;
            let upper = &alpha[&(p + 1)];
            ChainMap::from_fn(ex, ey, 0, |m| RatMatrix::block_diag(&g.mat(m + 1), &upper.mat(m)))?
        };
        alpha.insert(p, map);
    }
    Ok(alpha)
}

/// Per `p`: `α_p` is a chain map; both squares of the morphism of exact
/// rows commute; `α_p w_p^X = w_p^Y γ_p` (at `p = 0` this is the square
/// relating absolute and relative complexes of `X` and `Y`); and `α_p`
/// respects the splitting of `E^p` into its two summands.
pub fn verify_functorial_diagram(
    alpha: &BTreeMap<i64, ChainMap>,
    gamma: &FilteredMap,
    tx: &DuBoisTower,
    ty: &DuBoisTower,
) -> CheckReport {
    let mut report = CheckReport::new("functorial");
    if let Err(e) = check_compatible(gamma, tx, ty) {
        report.push(CheckResult::failed(None, e.to_string()));
        return report;
    }
    for p in tx.indices() {
        let mut failed = Vec::new();
        match functorial_entry(alpha, gamma, tx, ty, p) {
            Ok(claims) => failed.extend(claims),
            Err(e) => failed.push(e.to_string()),
        }
        let ok = failed.is_empty();
        report.push(CheckResult::exact(p, ok, if ok { "ok".into() } else { failed.join("; ") }));
    }
    report
}

fn functorial_entry(
    alpha: &BTreeMap<i64, ChainMap>,
    gamma: &FilteredMap,
    tx: &DuBoisTower,
    ty: &DuBoisTower,
    p: i64,
) -> Result<Vec<String>> {
    let mut failed = Vec::new();
    let mut require = |ok: bool, what: &str| {
        if !ok {
            failed.push(what.to_string());
        }
    };
    let a = alpha.get(&p).ok_or(DuboisError::IndexOutOfRange { p, lo: tx.p_min(), hi: tx.n() })?;
    let shapes_ok = a.source() == &tx.e(p)? && a.target() == &ty.e(p)?;
    require(shapes_ok, "alpha runs between the towers");
    if !shapes_ok {
        return Ok(failed);
    }
    require(a.is_chain_map(), "alpha chain map");
    let g = gamma_level(gamma, tx, ty, p)?;
    let left = tx.w(p)?.then(a)?;
    let right = g.then(ty.w(p)?)?;
    require(left.same_matrices(&right), "w square");
    if p < tx.n() {
        let (inc_x, proj_x) = tx.ses(p)?;
        let (inc_y, proj_y) = ty.ses(p)?;
        let upper = alpha.get(&(p + 1)).ok_or(DuboisError::IndexOutOfRange { p: p + 1, lo: tx.p_min(), hi: tx.n() })?;
        require(inc_x.then(a)?.same_matrices(&upper.then(inc_y)?), "left square");
        let g1 = gamma_level(gamma, tx, ty, p + 1)?.shift(1);
        require(a.then(proj_y)?.same_matrices(&proj_x.then(&g1)?), "right square");
        // The first summand of E^p is the image of F^{p+1}[1] under the
        // degreewise section (id, 0)^T of w'_p.
        let ex = tx.e(p)?;
        let fx = tx.f_level(p + 1)?.complex.shift(1);
        let fy = ty.f_level(p + 1)?.complex.shift(1);
        let split_ok = fx.degrees().all(|m| {
            let sx = RatMatrix::identity(fx.dim(m)).vstack(&RatMatrix::zeros(ex.dim(m) - fx.dim(m), fx.dim(m)));
            let sy = RatMatrix::identity(fy.dim(m))
                .vstack(&RatMatrix::zeros(ty.e(p).map(|e| e.dim(m)).unwrap_or(0) - fy.dim(m), fy.dim(m)));
            match (sx, sy) {
                (Ok(sx), Ok(sy)) => &*a.mat(m) * &sx == &sy * &*g1.mat(m),
                _ => false,
            }
        });
        require(split_ok, "splitting");
    }
    Ok(failed)
}
