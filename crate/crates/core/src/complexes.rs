//! Bounded cochain complexes of finite-dimensional rational vector spaces.
//!
//! A complex stores the dimensions of its pieces over a contiguous degree
//! window `[lo, hi]` and the differentials `d^m : C^m -> C^{m+1}` inside that
//! window. Outside the window every piece is zero. The `twist_weight` is the
//! formal power of the pulled-back canonical bundle of the base curve carried
//! by the complex; the models trivialize that bundle, so it never changes a
//! matrix, but maps between complexes of different weight are refused.

use std::borrow::Cow;
use std::collections::BTreeMap;

use thiserror::Error;

use crate::linalg::{quotient, LinalgError, Quotient, RatMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("shape mismatch in degree {degree}: {detail}")]
    Shape { degree: i64, detail: String },
    #[error("twist weight mismatch: {left} vs {right}")]
    WeightMismatch { left: i64, right: i64 },
    #[error("expected a degree-{expected} map, got degree {found}")]
    MapDegree { expected: i64, found: i64 },
    #[error("d∘d ≠ 0 starting in degree {0}")]
    NotAComplex(i64),
    #[error("not a chain map: the law fails in degree {0}")]
    NotAChainMap(i64),
    #[error("not a subcomplex: d leaves the subspace in degree {0}")]
    NotSubcomplex(i64),
    #[error("map does not descend to the quotient in degree {0}")]
    DoesNotDescend(i64),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub type Result<T> = std::result::Result<T, ComplexError>;

#[derive(Debug, Clone)]
pub struct CochainComplex {
    lo: i64,
    dims: Vec<usize>,
    /// `diffs[i]` is `d^{lo+i}`; the top differential maps to zero and is
    /// not stored.
    diffs: Vec<RatMatrix>,
    twist_weight: i64,
}

impl CochainComplex {
    /// `dims[i]` is the dimension in degree `lo + i`, `diffs[i]` the
    /// differential out of that degree. `diffs` has one entry fewer than
    /// `dims` (or none when `dims` is empty).
    pub fn new(lo: i64, dims: Vec<usize>, diffs: Vec<RatMatrix>, twist_weight: i64) -> Result<Self> {
        let expected = dims.len().saturating_sub(1);
        if diffs.len() != expected {
            return Err(ComplexError::Shape {
                degree: lo + diffs.len().min(expected) as i64,
                detail: format!("{} differentials for {} degrees", diffs.len(), dims.len()),
            });
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.shape() != (dims[i + 1], dims[i]) {
                return Err(ComplexError::Shape {
                    degree: lo + i as i64,
                    detail: format!(
                        "differential is {}x{}, expected {}x{}",
                        d.rows(),
                        d.cols(),
                        dims[i + 1],
                        dims[i]
                    ),
                });
            }
        }
        Ok(CochainComplex { lo, dims, diffs, twist_weight })
    }

    pub fn zero(twist_weight: i64) -> Self {
        CochainComplex { lo: 0, dims: Vec::new(), diffs: Vec::new(), twist_weight }
    }

    /// A single space of dimension `dim` sitting in degree `degree`.
    pub fn concentrated(degree: i64, dim: usize, twist_weight: i64) -> Self {
        CochainComplex { lo: degree, dims: vec![dim], diffs: Vec::new(), twist_weight }
    }

    /// Builds a complex on `[lo, hi]` from a dimension function and a
    /// differential function; shapes are checked.
    pub fn from_fn(
        lo: i64,
        hi: i64,
        twist_weight: i64,
        dim: impl Fn(i64) -> usize,
        d: impl Fn(i64) -> RatMatrix,
    ) -> Result<Self> {
        if hi < lo {
            return Ok(Self::zero(twist_weight));
        }
        let dims: Vec<usize> = (lo..=hi).map(&dim).collect();
        let diffs: Vec<RatMatrix> = (lo..hi).map(d).collect();
        Self::new(lo, dims, diffs, twist_weight)
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest degree of the window; `lo - 1` for an empty window.
    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    pub fn twist_weight(&self) -> i64 {
        self.twist_weight
    }

    pub fn dim(&self, m: i64) -> usize {
        if m < self.lo || m > self.hi() {
            0
        } else {
            self.dims[(m - self.lo) as usize]
        }
    }

    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.degrees().map(|m| (m, self.dim(m))).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// `d^m`, a zero matrix of the right shape outside the stored window.
    pub fn d(&self, m: i64) -> Cow<'_, RatMatrix> {
        if m >= self.lo && m < self.hi() {
            Cow::Borrowed(&self.diffs[(m - self.lo) as usize])
        } else {
            Cow::Owned(RatMatrix::zeros(self.dim(m + 1), self.dim(m)))
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees().map(|m| sign(m) * self.dim(m) as i64).sum()
    }

    /// `C[k]`: degree `m` holds `C^{m+k}`, differential `(-1)^k d`.
    pub fn shift(&self, k: i64) -> Self {
        CochainComplex {
            lo: self.lo - k,
            dims: self.dims.clone(),
            diffs: self.diffs.iter().map(|d| d.signed(k)).collect(),
            twist_weight: self.twist_weight,
        }
    }

    /// Same spaces and differentials, weight raised by `k`.
    pub fn twist(&self, k: i64) -> Self {
        CochainComplex { twist_weight: self.twist_weight + k, ..self.clone() }
    }

    /// Shape check plus `d^{m+1} d^m = 0` everywhere. Shape problems are
    /// errors, a nonzero square is `Ok(false)`.
    pub fn validate(&self) -> Result<bool> {
        Self::new(self.lo, self.dims.clone(), self.diffs.clone(), self.twist_weight)?;
        Ok(self.first_nonzero_square().is_none())
    }

    fn first_nonzero_square(&self) -> Option<i64> {
        (self.lo..self.hi() - 1).find(|&m| !(&*self.d(m + 1) * &*self.d(m)).is_zero())
    }

    fn require_valid(&self) -> Result<()> {
        match self.first_nonzero_square() {
            Some(m) => Err(ComplexError::NotAComplex(m)),
            None => Ok(()),
        }
    }

    /// Union of the two degree windows (empty complexes ignored).
    fn joint_window(&self, other: &CochainComplex) -> Option<(i64, i64)> {
        match (self.is_window_empty(), other.is_window_empty()) {
            (true, true) => None,
            (true, false) => Some((other.lo, other.hi())),
            (false, true) => Some((self.lo, self.hi())),
            (false, false) => Some((self.lo.min(other.lo), self.hi().max(other.hi()))),
        }
    }

    fn is_window_empty(&self) -> bool {
        self.dims.is_empty()
    }
}

/// Equality of dimensions, differentials and twist weight in every degree;
/// the stored window is irrelevant.
impl PartialEq for CochainComplex {
    fn eq(&self, other: &Self) -> bool {
        if self.twist_weight != other.twist_weight {
            return false;
        }
        let Some((lo, hi)) = self.joint_window(other) else {
            return true;
        };
        (lo..=hi).all(|m| self.dim(m) == other.dim(m) && self.d(m) == other.d(m))
    }
}

pub(crate) fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub fn validate_complex(c: &CochainComplex) -> Result<bool> {
    c.validate()
}

pub fn shift(c: &CochainComplex, k: i64) -> CochainComplex {
    c.shift(k)
}

pub fn twist(c: &CochainComplex, k: i64) -> CochainComplex {
    c.twist(k)
}

/// Per-degree `dim ker d^m - rank d^{m-1}`.
pub fn cohomology_dims(c: &CochainComplex) -> Result<BTreeMap<i64, usize>> {
    c.require_valid()?;
    let ranks: BTreeMap<i64, usize> = (c.lo() - 1..=c.hi()).map(|m| (m, c.d(m).rank())).collect();
    Ok(c.degrees().map(|m| (m, c.dim(m) - ranks[&m] - ranks[&(m - 1)])).collect())
}

/// Equality of cohomology dimensions in every degree. This is weaker than
/// a quasi-isomorphism and is reported as such by the verifiers.
pub fn dims_match(a: &CochainComplex, b: &CochainComplex) -> Result<bool> {
    let ha = cohomology_dims(a)?;
    let hb = cohomology_dims(b)?;
    let degrees: std::collections::BTreeSet<i64> = ha.keys().chain(hb.keys()).copied().collect();
    Ok(degrees
        .into_iter()
        .all(|m| ha.get(&m).copied().unwrap_or(0) == hb.get(&m).copied().unwrap_or(0)))
}

/// Degreewise direct sum with block-diagonal differential.
pub fn direct_sum(a: &CochainComplex, b: &CochainComplex) -> Result<CochainComplex> {
    if a.twist_weight() != b.twist_weight() {
        return Err(ComplexError::WeightMismatch { left: a.twist_weight(), right: b.twist_weight() });
    }
    let Some((lo, hi)) = a.joint_window(b) else {
        return Ok(CochainComplex::zero(a.twist_weight()));
    };
    CochainComplex::from_fn(
        lo,
        hi,
        a.twist_weight(),
        |m| a.dim(m) + b.dim(m),
        |m| RatMatrix::block_diag(&a.d(m), &b.d(m)),
    )
}

/// A map of complexes of degree `k`: `C^m -> D^{m+k}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainMap {
    source: CochainComplex,
    target: CochainComplex,
    degree: i64,
    /// `mats[i]` is the component out of source degree `source.lo() + i`.
    mats: Vec<RatMatrix>,
}

impl ChainMap {
    /// Shape-checked constructor; the chain-map law is *not* enforced here
    /// (see [`ChainMap::is_chain_map`]).
    pub fn new(
        source: CochainComplex,
        target: CochainComplex,
        degree: i64,
        mats: Vec<RatMatrix>,
    ) -> Result<Self> {
        if mats.len() != source.dims.len() {
            return Err(ComplexError::Shape {
                degree: source.lo(),
                detail: format!("{} components for {} source degrees", mats.len(), source.dims.len()),
            });
        }
        for (m, f) in source.degrees().zip(&mats) {
            let want = (target.dim(m + degree), source.dim(m));
            if f.shape() != want {
                return Err(ComplexError::Shape {
                    degree: m,
                    detail: format!(
                        "component is {}x{}, expected {}x{}",
                        f.rows(),
                        f.cols(),
                        want.0,
                        want.1
                    ),
                });
            }
        }
        Ok(ChainMap { source, target, degree, mats })
    }

    pub fn from_fn(
        source: CochainComplex,
        target: CochainComplex,
        degree: i64,
        f: impl Fn(i64) -> RatMatrix,
    ) -> Result<Self> {
        let mats = source.degrees().map(f).collect();
        Self::new(source, target, degree, mats)
    }

    pub fn identity(c: &CochainComplex) -> Self {
        let mats = c.degrees().map(|m| RatMatrix::identity(c.dim(m))).collect();
        ChainMap { source: c.clone(), target: c.clone(), degree: 0, mats }
    }

    pub fn zero(source: &CochainComplex, target: &CochainComplex, degree: i64) -> Self {
        let mats =
            source.degrees().map(|m| RatMatrix::zeros(target.dim(m + degree), source.dim(m))).collect();
        ChainMap { source: source.clone(), target: target.clone(), degree, mats }
    }

    pub fn source(&self) -> &CochainComplex {
        &self.source
    }

    pub fn target(&self) -> &CochainComplex {
        &self.target
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// Component out of source degree `m`.
    pub fn mat(&self, m: i64) -> Cow<'_, RatMatrix> {
        if m >= self.source.lo() && m <= self.source.hi() {
            Cow::Borrowed(&self.mats[(m - self.source.lo()) as usize])
        } else {
            Cow::Owned(RatMatrix::zeros(self.target.dim(m + self.degree), self.source.dim(m)))
        }
    }

    /// Mutable access to one component, for building deliberately broken
    /// maps in tests and diagnostics.
    pub fn mat_mut(&mut self, m: i64) -> Option<&mut RatMatrix> {
        if m >= self.source.lo() && m <= self.source.hi() {
            Some(&mut self.mats[(m - self.source.lo()) as usize])
        } else {
            None
        }
    }

    /// First degree where `d_T f = (-1)^k f d_S` fails, if any.
    pub fn chain_law_failure(&self) -> Option<i64> {
        let k = self.degree;
        self.source.degrees().find(|&m| {
            let lhs = &*self.target.d(m + k) * &*self.mat(m);
            let rhs = (&*self.mat(m + 1) * &*self.source.d(m)).signed(k);
            lhs != rhs
        })
    }

    pub fn is_chain_map(&self) -> bool {
        self.chain_law_failure().is_none()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ChainMap) -> Result<ChainMap> {
        check_weights(self.target.twist_weight(), other.source.twist_weight())?;
        let joint = self.target.joint_window(&other.source);
        if let Some((lo, hi)) = joint {
            if let Some(m) = (lo..=hi).find(|&m| self.target.dim(m) != other.source.dim(m)) {
                return Err(ComplexError::Shape {
                    degree: m,
                    detail: "composable maps disagree on the middle complex".into(),
                });
            }
        }
        let k = self.degree;
        ChainMap::from_fn(self.source.clone(), other.target.clone(), k + other.degree, |m| {
            &*other.mat(m + k) * &*self.mat(m)
        })
    }

    /// For a degree-0 map `f: A -> B`, the map `f[k]: A[k] -> B[k]`.
    pub fn shift(&self, k: i64) -> ChainMap {
        ChainMap {
            source: self.source.shift(k),
            target: self.target.shift(k),
            degree: self.degree,
            mats: self.mats.clone(),
        }
    }

    /// Same matrices between the twisted complexes.
    pub fn twist(&self, k: i64) -> ChainMap {
        ChainMap {
            source: self.source.twist(k),
            target: self.target.twist(k),
            degree: self.degree,
            mats: self.mats.clone(),
        }
    }

    /// Same matrices with the source and target replaced by complexes of
    /// identical shape (used to re-label weights or windows).
    pub fn retarget(&self, source: CochainComplex, target: CochainComplex) -> Result<ChainMap> {
        ChainMap::from_fn(source, target, self.degree, |m| self.mat(m).into_owned())
    }

    /// Degreewise injectivity.
    pub fn is_injective(&self) -> bool {
        self.source.degrees().all(|m| self.mat(m).rank() == self.source.dim(m))
    }

    /// Degreewise surjectivity.
    pub fn is_surjective(&self) -> bool {
        let lo = self.target.lo() - self.degree;
        let hi = self.target.hi() - self.degree;
        (lo..=hi).all(|m| self.mat(m).rank() == self.target.dim(m + self.degree))
    }

    /// Exact matrix equality with another map over the union of windows.
    pub fn same_matrices(&self, other: &ChainMap) -> bool {
        if self.degree != other.degree {
            return false;
        }
        let Some((lo, hi)) = self.source.joint_window(&other.source) else {
            return true;
        };
        (lo..=hi).all(|m| self.mat(m) == other.mat(m))
    }
}

fn check_weights(left: i64, right: i64) -> Result<()> {
    if left != right {
        return Err(ComplexError::WeightMismatch { left, right });
    }
    Ok(())
}

pub fn is_chain_map(f: &ChainMap) -> bool {
    f.is_chain_map()
}

/// The cone of a degree-0 map together with its two structure maps.
#[derive(Debug, Clone)]
pub struct Cone {
    pub complex: CochainComplex,
    /// `target -> cone`, onto the second summand.
    pub inject: ChainMap,
    /// `cone -> source[1]`, onto the first summand.
    pub project: ChainMap,
}

/// `cone(f)^m = A^{m+1} ⊕ B^m` with differential
/// `[[-d_A^{m+1}, 0], [f^{m+1}, d_B^m]]`.
pub fn cone(f: &ChainMap) -> Result<Cone> {
    if f.degree != 0 {
        return Err(ComplexError::MapDegree { expected: 0, found: f.degree });
    }
    let a = &f.source;
    let b = &f.target;
    check_weights(a.twist_weight(), b.twist_weight())?;
    let a1 = a.shift(1);
    let weight = b.twist_weight();
    let complex = match a1.joint_window(b) {
        None => CochainComplex::zero(weight),
        Some((lo, hi)) => CochainComplex::from_fn(
            lo,
            hi,
            weight,
            |m| a.dim(m + 1) + b.dim(m),
            |m| {
                let top_right = RatMatrix::zeros(a.dim(m + 2), b.dim(m));
                RatMatrix::block2(&-&*a.d(m + 1), &top_right, &f.mat(m + 1), &b.d(m))
                    .expect("cone blocks are shape-compatible")
            },
        )?,
    };
    let inject = ChainMap::from_fn(b.clone(), complex.clone(), 0, |m| {
        RatMatrix::zeros(a.dim(m + 1), b.dim(m))
            .vstack(&RatMatrix::identity(b.dim(m)))
            .expect("inject blocks")
    })?;
    let project = ChainMap::from_fn(complex.clone(), a1, 0, |m| {
        RatMatrix::identity(a.dim(m + 1))
            .hstack(&RatMatrix::zeros(a.dim(m + 1), b.dim(m)))
            .expect("project blocks")
    })?;
    Ok(Cone { complex, inject, project })
}

/// True iff `f` induces isomorphisms on cohomology in every degree.
///
/// The induced map on `H^m` has rank `rank[B^m_T | f Z^m_S] - rank B^m_T`,
/// where `Z` are cycles and `B` boundaries; it is an isomorphism iff that
/// rank equals both cohomology dimensions.
pub fn quasi_iso(f: &ChainMap) -> Result<bool> {
    if f.degree != 0 {
        return Err(ComplexError::MapDegree { expected: 0, found: f.degree });
    }
    f.source.require_valid()?;
    f.target.require_valid()?;
    if let Some(m) = f.chain_law_failure() {
        return Err(ComplexError::NotAChainMap(m));
    }
    let hs = cohomology_dims(&f.source)?;
    let ht = cohomology_dims(&f.target)?;
    let Some((lo, hi)) = f.source.joint_window(&f.target) else {
        return Ok(true);
    };
    for m in lo..=hi {
        let h_src = hs.get(&m).copied().unwrap_or(0);
        let h_tgt = ht.get(&m).copied().unwrap_or(0);
        if h_src != h_tgt {
            return Ok(false);
        }
        if h_src == 0 {
            continue;
        }
        let cycles = f.source.d(m).kernel_basis();
        let image = &*f.mat(m) * &cycles;
        let boundaries = f.target.d(m - 1).into_owned();
        let induced_rank = boundaries.hstack(&image)?.rank() - boundaries.rank();
        if induced_rank != h_src {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A quotient complex `C / K` of a complex by a subcomplex, with the
/// projection and the degreewise quotient data.
#[derive(Debug, Clone)]
pub struct QuotientComplex {
    pub complex: CochainComplex,
    pub projection: ChainMap,
    pub sub: BTreeMap<i64, RatMatrix>,
    pub pieces: BTreeMap<i64, Quotient>,
}

/// Quotient of `c` by the subcomplex spanned degreewise by `sub(m)` (columns
/// in the coordinates of `c^m`). The induced differential is obtained by
/// lifting quotient basis vectors, applying `d` and pushing forward.
pub fn quotient_complex(
    c: &CochainComplex,
    sub: impl Fn(i64) -> RatMatrix,
) -> Result<QuotientComplex> {
    let mut subs = BTreeMap::new();
    let mut pieces = BTreeMap::new();
    for m in c.lo() - 1..=c.hi() + 1 {
        let s = sub(m);
        if s.rows() != c.dim(m) {
            return Err(ComplexError::Shape {
                degree: m,
                detail: format!("subspace of dimension-{} space has {} rows", c.dim(m), s.rows()),
            });
        }
        let s = s.column_basis();
        pieces.insert(m, quotient(c.dim(m), &s)?);
        subs.insert(m, s);
    }
    for m in c.degrees() {
        let image = &*c.d(m) * &subs[&m];
        if !(&pieces[&(m + 1)].map * &image).is_zero() {
            return Err(ComplexError::NotSubcomplex(m));
        }
    }
    let complex = CochainComplex::from_fn(
        c.lo(),
        c.hi(),
        c.twist_weight(),
        |m| pieces[&m].dim,
        |m| &(&pieces[&(m + 1)].map * &*c.d(m)) * &pieces[&m].section,
    )?;
    let projection = ChainMap::from_fn(c.clone(), complex.clone(), 0, |m| pieces[&m].map.clone())?;
    Ok(QuotientComplex { complex, projection, sub: subs, pieces })
}

impl QuotientComplex {
    fn sub_at(&self, m: i64) -> RatMatrix {
        self.sub.get(&m).cloned().unwrap_or_else(|| RatMatrix::zeros(0, 0))
    }

    fn piece(&self, m: i64) -> Option<&Quotient> {
        self.pieces.get(&m)
    }
}

/// The map `C/K -> C'/K'` induced by a degree-0 map `f: C -> C'` with
/// `f(K) ⊆ K'`.
pub fn induced_map(f: &ChainMap, src: &QuotientComplex, tgt: &QuotientComplex) -> Result<ChainMap> {
    if f.degree != 0 {
        return Err(ComplexError::MapDegree { expected: 0, found: f.degree });
    }
    for m in src.complex.degrees() {
        let Some(pt) = tgt.piece(m) else {
            continue;
        };
        let kernel = src.sub_at(m);
        if kernel.cols() > 0 && !(&(&pt.map * &*f.mat(m)) * &kernel).is_zero() {
            return Err(ComplexError::DoesNotDescend(m));
        }
    }
    ChainMap::from_fn(src.complex.clone(), tgt.complex.clone(), 0, |m| {
        match (src.piece(m), tgt.piece(m)) {
            (Some(ps), Some(pt)) => &(&pt.map * &*f.mat(m)) * &ps.section,
            _ => RatMatrix::zeros(tgt.complex.dim(m), src.complex.dim(m)),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn m(cols: usize, rows: &[Vec<i64>]) -> RatMatrix {
        RatMatrix::from_rows_i64(cols, rows)
    }

    /// k[t] with deg ≤ 2 in degree 0, k[t]dt with deg ≤ 2 in degree 1.
    fn line_de_rham() -> CochainComplex {
        // d(1) = 0, d(t) = dt, d(t^2) = 2t dt
        let d = m(3, &[vec![0, 1, 0], vec![0, 0, 2], vec![0, 0, 0]]);
        CochainComplex::new(0, vec![3, 3], vec![d], 0).unwrap()
    }

    #[test]
    fn zero_complex_is_valid() {
        let z = CochainComplex::zero(0);
        assert!(z.validate().unwrap());
        assert!(cohomology_dims(&z).unwrap().is_empty());
    }

    #[test]
    fn line_cohomology() {
        let c = line_de_rham();
        assert!(c.validate().unwrap());
        let h = cohomology_dims(&c).unwrap();
        assert_eq!(h[&0], 1);
        assert_eq!(h[&1], 1);
    }

    #[test]
    fn nonzero_square_detected() {
        let d0 = m(1, &[vec![1]]);
        let d1 = m(1, &[vec![1]]);
        let c = CochainComplex::new(0, vec![1, 1, 1], vec![d0, d1], 0).unwrap();
        assert!(!c.validate().unwrap());
        assert_eq!(cohomology_dims(&c), Err(ComplexError::NotAComplex(0)));
    }

    #[test]
    fn shape_errors_name_the_degree() {
        let bad = RatMatrix::zeros(2, 2);
        let err = CochainComplex::new(3, vec![2, 3], vec![bad], 0).unwrap_err();
        assert!(matches!(err, ComplexError::Shape { degree: 3, .. }));
    }

    #[test]
    fn shift_and_twist() {
        let c = line_de_rham();
        assert_eq!(c.shift(0), c);
        assert_eq!(c.shift(1).shift(-1), c);
        let s = c.shift(1);
        assert_eq!(s.dim(-1), 3);
        assert_eq!(*s.d(-1), -&*c.d(0));
        assert_eq!(c.twist(0), c);
        assert_eq!(c.twist(1).twist(-1), c);
        assert_ne!(c.twist(1), c);
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let c = line_de_rham();
        let cone = cone(&ChainMap::identity(&c)).unwrap();
        assert!(cone.complex.validate().unwrap());
        assert!(cohomology_dims(&cone.complex).unwrap().values().all(|&h| h == 0));
        assert!(cone.inject.is_chain_map());
        assert!(cone.project.is_chain_map());
    }

    #[test]
    fn cone_of_zero_from_zero_is_target() {
        let c = line_de_rham();
        let f = ChainMap::zero(&CochainComplex::zero(0), &c, 0);
        assert_eq!(cone(&f).unwrap().complex, c);
    }

    #[test]
    fn cone_rejects_bad_input() {
        let c = line_de_rham();
        let f = ChainMap::zero(&c, &c.twist(1), 0);
        assert!(matches!(cone(&f), Err(ComplexError::WeightMismatch { .. })));
        let g = ChainMap::zero(&c, &c, 1);
        assert!(matches!(cone(&g), Err(ComplexError::MapDegree { .. })));
    }

    #[test]
    fn quasi_iso_examples() {
        let c = line_de_rham();
        assert!(quasi_iso(&ChainMap::identity(&c)).unwrap());
        assert!(!quasi_iso(&ChainMap::zero(&c, &c, 0)).unwrap());
        // Inclusion of constants (degree 0) into the line complex only hits H^0.
        let k = CochainComplex::concentrated(0, 1, 0);
        let incl = ChainMap::new(k, c.clone(), 0, vec![m(1, &[vec![1], vec![0], vec![0]])]).unwrap();
        assert!(incl.is_chain_map());
        assert!(!quasi_iso(&incl).unwrap());
    }

    #[test]
    fn direct_sum_examples() {
        let c = line_de_rham();
        assert_eq!(direct_sum(&c, &CochainComplex::zero(0)).unwrap(), c);
        let s = direct_sum(&c, &c.shift(1)).unwrap();
        assert_eq!(s.dim(0), 6);
        assert_eq!(s.dim(-1), 3);
        assert!(direct_sum(&c, &c.twist(1)).is_err());
    }

    #[test]
    fn chain_law_with_shift_sign() {
        // d as a degree-1 map C -> C anticommutes with itself only up to
        // d∘d = 0; the law d_T f = (-1) f d_S holds trivially.
        let c = line_de_rham();
        let f = ChainMap::from_fn(c.clone(), c.clone(), 1, |m| c.d(m).into_owned()).unwrap();
        assert!(f.is_chain_map());
        let mut g = ChainMap::identity(&c);
        g.mat_mut(0).unwrap().set(1, 0, rat(1));
        assert!(!g.is_chain_map());
    }

    #[test]
    fn quotient_by_constants() {
        let c = line_de_rham();
        let q = quotient_complex(&c, |m| {
            if m == 0 {
                m_col(3, 0)
            } else {
                RatMatrix::zeros(c.dim(m), 0)
            }
        })
        .unwrap();
        assert_eq!(q.complex.dim(0), 2);
        assert!(q.projection.is_chain_map());
        let h = cohomology_dims(&q.complex).unwrap();
        assert_eq!((h[&0], h[&1]), (0, 1));
    }

    fn m_col(n: usize, i: usize) -> RatMatrix {
        let mut v = RatMatrix::zeros(n, 1);
        v.set(i, 0, rat(1));
        v
    }
}
