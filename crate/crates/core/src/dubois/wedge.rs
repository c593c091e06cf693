use std::borrow::Cow;

use crate::complexes::ChainMap;
use crate::filtered::{validate_filtration, FilteredComplex};
use crate::linalg::{subspace_contains, RatMatrix};

use super::{DuboisError, Result};

/// Wedge with the pulled-back 1-form of the base, `α ↦ α ∧ f*(dt)`.
///
/// `mats[m]` is the geometric map in ambient degree `m`; it commutes with
/// `d`. As a map of complexes into the shifted ambient it is used through
/// [`WedgeOperator::sign_normalized`], which carries the Koszul sign.
#[derive(Debug, Clone)]
pub struct WedgeOperator {
    carrier: FilteredComplex,
    mats: Vec<RatMatrix>,
}

impl WedgeOperator {
    pub fn new(carrier: FilteredComplex, mats: Vec<RatMatrix>) -> Result<Self> {
        let c = carrier.ambient();
        if mats.len() != c.degrees().count() {
            return Err(DuboisError::WedgeShape {
                degree: c.lo(),
                detail: format!("{} components for {} degrees", mats.len(), c.degrees().count()),
            });
        }
        for (m, w) in c.degrees().zip(&mats) {
            if w.shape() != (c.dim(m + 1), c.dim(m)) {
                return Err(DuboisError::WedgeShape {
                    degree: m,
                    detail: format!("component is {}x{}, expected {}x{}", w.rows(), w.cols(), c.dim(m + 1), c.dim(m)),
                });
            }
        }
        Ok(WedgeOperator { carrier, mats })
    }

    pub fn from_fn(carrier: FilteredComplex, w: impl Fn(i64) -> RatMatrix) -> Result<Self> {
        let mats = carrier.ambient().degrees().map(w).collect();
        Self::new(carrier, mats)
    }

    pub fn zero(carrier: FilteredComplex) -> Self {
        let c = carrier.ambient().clone();
        let mats = c.degrees().map(|m| RatMatrix::zeros(c.dim(m + 1), c.dim(m))).collect();
        WedgeOperator { carrier, mats }
    }

    pub fn carrier(&self) -> &FilteredComplex {
        &self.carrier
    }

    pub fn mat(&self, m: i64) -> Cow<'_, RatMatrix> {
        let c = self.carrier.ambient();
        if m >= c.lo() && m <= c.hi() {
            Cow::Borrowed(&self.mats[(m - c.lo()) as usize])
        } else {
            Cow::Owned(RatMatrix::zeros(c.dim(m + 1), c.dim(m)))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mats.iter().all(RatMatrix::is_zero)
    }

    /// The chain map `W̃ : A -> A[1] ⊗ L^{-1}`, `W̃^m = (-1)^m W^m`.
    pub fn sign_normalized(&self) -> ChainMap {
        let c = self.carrier.ambient();
        ChainMap::from_fn(c.clone(), c.shift(1).twist(-1), 0, |m| self.mat(m).signed(m))
            .expect("wedge components have chain-map shapes")
    }
}

/// `Ok(())` iff the carrier is a valid filtration and the wedge squares to
/// zero, commutes with `d`, is a chain map after sign normalization and
/// raises the filtration by one.
pub fn validate_wedge(w: &WedgeOperator) -> Result<()> {
    validate_filtration(&w.carrier)?;
    let c = w.carrier.ambient();
    for m in c.degrees() {
        if !(&*w.mat(m + 1) * &*w.mat(m)).is_zero() {
            return Err(DuboisError::WedgeNotSquareZero { degree: m });
        }
    }
    for m in c.degrees() {
        if &*c.d(m + 1) * &*w.mat(m) != &*w.mat(m + 1) * &*c.d(m) {
            return Err(DuboisError::WedgeNotCommuting { degree: m });
        }
    }
    if let Some(m) = w.sign_normalized().chain_law_failure() {
        return Err(DuboisError::WedgeNotChainMap { degree: m });
    }
    for p in 0..=w.carrier.n() {
        for m in c.degrees() {
            let image = &*w.mat(m) * &*w.carrier.level(p, m);
            if !subspace_contains(&w.carrier.level(p + 1, m + 1), &image)? {
                return Err(DuboisError::WedgeNotFiltered { level: p, degree: m });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::CochainComplex;
    use crate::filtered::bete_filtration;

    fn plane_like() -> FilteredComplex {
        // Ω of k[t] truncated to constants: dims (1, 1) with d = 0,
        // one form dt in degree 1.
        let c = CochainComplex::new(0, vec![1, 1], vec![RatMatrix::zeros(1, 1)], 0).unwrap();
        bete_filtration(&c)
    }

    #[test]
    fn zero_wedge_is_valid() {
        validate_wedge(&WedgeOperator::zero(plane_like())).unwrap();
    }

    #[test]
    fn wedge_with_dt_on_constants() {
        let f = plane_like();
        let w = WedgeOperator::from_fn(f, |m| {
            if m == 0 {
                RatMatrix::identity(1)
            } else {
                RatMatrix::zeros(0, 1)
            }
        })
        .unwrap();
        validate_wedge(&w).unwrap();
        assert!(w.sign_normalized().is_chain_map());
    }

    #[test]
    fn wedge_breaking_filtration() {
        // W(F^0) must land in F^1; with F^1 = 0 in degree 1 it cannot.
        let c = CochainComplex::new(0, vec![1, 1], vec![RatMatrix::zeros(1, 1)], 0).unwrap();
        let f = FilteredComplex::from_fn(c.clone(), 1, |p, m| {
            if p == 0 {
                RatMatrix::identity(c.dim(m))
            } else {
                RatMatrix::zeros(c.dim(m), 0)
            }
        })
        .unwrap();
        let w = WedgeOperator::from_fn(f, |m| {
            if m == 0 {
                RatMatrix::identity(1)
            } else {
                RatMatrix::zeros(0, 1)
            }
        })
        .unwrap();
        assert_eq!(validate_wedge(&w), Err(DuboisError::WedgeNotFiltered { level: 0, degree: 0 }));
    }
}
