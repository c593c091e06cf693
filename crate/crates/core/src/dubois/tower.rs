use std::collections::BTreeMap;

use crate::complexes::{cone, ChainMap, CochainComplex};
use crate::filtered::{FilteredComplex, SubComplex};
use crate::linalg::RatMatrix;

use super::wedge::{validate_wedge, WedgeOperator};
use super::{DuboisError, Result};

/// Twist weight carried by every `E^p`. Wedging with `f*(dt)` consumes one
/// factor of `L = f*ω_C`, so the cone of `w_{p+1}` already lives in weight
/// `-1`, which is where the recursion places `E^p`.
pub const TOWER_WEIGHT: i64 = -1;

/// One level of the tower.
#[derive(Debug, Clone)]
pub struct TowerLevel {
    /// `E^p`. For `p < n` its degree-`m` piece is
    /// `(F^{p+1})^{m+1} ⊕ (E^{p+1})^m`, in that order.
    pub complex: CochainComplex,
    /// `w_p : F^p ⊗ L^{-1} -> E^p`, the block `(∧_p, 0)`.
    pub w: ChainMap,
    /// `δ_p : E^{p+1} -> E^p`, the inclusion of the subcomplex.
    pub delta: ChainMap,
    /// `E^{p+1} -> E^p`, first map of the short exact row (cone injection).
    pub include: ChainMap,
    /// `w'_p : E^p -> F^{p+1}[1] ⊗ L^{-1}`, the block `(id, 0)`.
    pub project: ChainMap,
}

/// The family `{E^p}` for `p_min ≤ p ≤ n`, built by descending recursion.
#[derive(Debug, Clone)]
pub struct DuBoisTower {
    filtered: FilteredComplex,
    wedge: WedgeOperator,
    p_min: i64,
    /// `F^p` for `p_min ≤ p ≤ n + 1`, weight 0.
    f_levels: BTreeMap<i64, SubComplex>,
    /// `F^{p+1} -> F^p` in the level bases, for `p_min ≤ p ≤ n`.
    f_inclusions: BTreeMap<i64, ChainMap>,
    /// `∧_p : F^p ⊗ L^{-1} -> F^{p+1}[1] ⊗ L^{-1}` in the level bases.
    wedges: BTreeMap<i64, ChainMap>,
    levels: BTreeMap<i64, TowerLevel>,
}

impl DuBoisTower {
    pub fn filtered(&self) -> &FilteredComplex {
        &self.filtered
    }

    pub fn wedge(&self) -> &WedgeOperator {
        &self.wedge
    }

    pub fn p_min(&self) -> i64 {
        self.p_min
    }

    pub fn n(&self) -> i64 {
        self.filtered.n()
    }

    /// Indices with a stored level, `p_min..=n`.
    pub fn indices(&self) -> std::ops::RangeInclusive<i64> {
        self.p_min..=self.n()
    }

    fn level(&self, p: i64) -> Result<&TowerLevel> {
        self.levels.get(&p).ok_or(DuboisError::IndexOutOfRange { p, lo: self.p_min, hi: self.n() })
    }

    /// `E^p`; zero for `p > n`.
    pub fn e(&self, p: i64) -> Result<CochainComplex> {
        if p > self.n() {
            return Ok(CochainComplex::zero(TOWER_WEIGHT));
        }
        Ok(self.level(p)?.complex.clone())
    }

    pub fn level_data(&self, p: i64) -> Result<&TowerLevel> {
        self.level(p)
    }

    pub fn w(&self, p: i64) -> Result<&ChainMap> {
        Ok(&self.level(p)?.w)
    }

    pub fn delta(&self, p: i64) -> Result<&ChainMap> {
        Ok(&self.level(p)?.delta)
    }

    /// The witness maps of `0 -> E^{p+1} -> E^p -> F^{p+1}[1] ⊗ L^{-1} -> 0`.
    pub fn ses(&self, p: i64) -> Result<(&ChainMap, &ChainMap)> {
        let l = self.level(p)?;
        Ok((&l.include, &l.project))
    }

    /// `F^p` as an abstract complex, weight 0.
    pub fn f_level(&self, p: i64) -> Result<&SubComplex> {
        self.f_levels.get(&p).ok_or(DuboisError::IndexOutOfRange { p, lo: self.p_min, hi: self.n() + 1 })
    }

    /// `F^{p+1} -> F^p`.
    pub fn f_inclusion(&self, p: i64) -> Result<&ChainMap> {
        self.f_inclusions.get(&p).ok_or(DuboisError::IndexOutOfRange { p, lo: self.p_min, hi: self.n() })
    }

    /// `∧_p : F^p ⊗ L^{-1} -> F^{p+1}[1] ⊗ L^{-1}`.
    pub fn wedge_level(&self, p: i64) -> Result<&ChainMap> {
        self.wedges.get(&p).ok_or(DuboisError::IndexOutOfRange { p, lo: self.p_min, hi: self.n() })
    }

    /// Composite of the `δ`s: `E^from -> E^to` for `to ≤ from`.
    pub fn delta_chain(&self, from: i64, to: i64) -> Result<ChainMap> {
        let mut map = ChainMap::identity(&self.e(from)?);
        for q in (to..from).rev() {
            map = map.then(self.delta(q)?)?;
        }
        Ok(map)
    }

    /// Composite of the filtration inclusions `F^from -> F^to`, twisted by
    /// `L^{-1}` so that it composes with the `w_p`.
    pub fn f_inclusion_chain(&self, from: i64, to: i64) -> Result<ChainMap> {
        let mut map = ChainMap::identity(&self.f_level(from)?.complex.twist(TOWER_WEIGHT));
        for q in (to..from).rev() {
            map = map.then(&self.f_inclusion(q)?.twist(TOWER_WEIGHT))?;
        }
        Ok(map)
    }
}

/// Builds `E^p` for `p_min ≤ p ≤ n`: `E^p = 0` for `p ≥ n`, and otherwise
/// `E^p = cone(w_{p+1}) ⊗ L^{-1}` with `w_p = (∧_p, 0)` and
/// `w'_p = (id, 0)`. The inclusions `δ_p` come from cone functoriality
/// applied to the square `F^{p+2} -> F^{p+1}`, `E^{p+2} -> E^{p+1}`.
pub fn build_tower(filtered: &FilteredComplex, wedge: &WedgeOperator, p_min: i64) -> Result<DuBoisTower> {
    validate_wedge(wedge)?;
    let n = filtered.n();
    if p_min > n {
        return Err(DuboisError::FloorTooHigh { p_min, n });
    }
    let mut f_levels = BTreeMap::new();
    for p in p_min..=n + 1 {
        f_levels.insert(p, filtered.level_complex(p)?);
    }
    let mut f_inclusions = BTreeMap::new();
    let mut wedges = BTreeMap::new();
    for p in p_min..=n {
        f_inclusions.insert(p, filtered.inclusion(p)?);
        wedges.insert(p, restricted_wedge(wedge, &f_levels[&p], &f_levels[&(p + 1)], p)?);
    }

    let mut levels: BTreeMap<i64, TowerLevel> = BTreeMap::new();
    for p in (p_min..=n).rev() {
        let fp = f_levels[&p].complex.twist(TOWER_WEIGHT);
        let fp1_shift = f_levels[&(p + 1)].complex.twist(TOWER_WEIGHT).shift(1);
        let level = if p >= n {
            let zero = CochainComplex::zero(TOWER_WEIGHT);
            TowerLevel {
                complex: zero.clone(),
                w: ChainMap::zero(&fp, &zero, 0),
                delta: ChainMap::zero(&zero, &zero, 0),
                include: ChainMap::zero(&zero, &zero, 0),
                project: ChainMap::zero(&zero, &fp1_shift, 0),
            }
        } else {
            let upper = &levels[&(p + 1)];
            let cone = cone(&upper.w)?;
            let complex = cone.complex;
            let wedge_p = &wedges[&p];
            let e_upper = &upper.complex;
            let w = ChainMap::from_fn(fp.clone(), complex.clone(), 0, |m| {
                wedge_p
                    .mat(m)
                    .vstack(&RatMatrix::zeros(e_upper.dim(m), fp.dim(m)))
                    .expect("w_p blocks")
            })?;
            let delta = if p + 1 >= n {
                ChainMap::zero(e_upper, &complex, 0)
            } else {
                let incl = &f_inclusions[&(p + 1)];
                let delta_upper = &upper.delta;
                ChainMap::from_fn(e_upper.clone(), complex.clone(), 0, |m| {
                    RatMatrix::block_diag(&incl.mat(m + 1), &delta_upper.mat(m))
                })?
            };
            TowerLevel { complex, w, delta, include: cone.inject, project: cone.project }
        };
        levels.insert(p, level);
    }

    Ok(DuBoisTower {
        filtered: filtered.clone(),
        wedge: wedge.clone(),
        p_min,
        f_levels,
        f_inclusions,
        wedges,
        levels,
    })
}

/// `∧_p` expressed in the chosen bases of `F^p` and `F^{p+1}`, with the
/// sign normalization of [`WedgeOperator::sign_normalized`].
fn restricted_wedge(wedge: &WedgeOperator, fp: &SubComplex, fp1: &SubComplex, p: i64) -> Result<ChainMap> {
    let signed = wedge.sign_normalized();
    let source = fp.complex.twist(TOWER_WEIGHT);
    let target = fp1.complex.twist(TOWER_WEIGHT).shift(1);
    let mut mats = Vec::new();
    for m in source.degrees() {
        let image = &*signed.mat(m) * &*fp.include.mat(m);
        let coords = fp1
            .include
            .mat(m + 1)
            .solve(&image)
            .map_err(|_| DuboisError::WedgeNotFiltered { level: p, degree: m })?;
        mats.push(coords);
    }
    Ok(ChainMap::new(source, target, 0, mats)?)
}
