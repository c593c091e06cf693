//! Concrete filtered complexes with wedge operators: a smooth family over
//! the affine line, a nodal one, and user-supplied ones.

mod custom;
pub mod forms;
mod nodal;
mod smooth;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::complexes::{ChainMap, CochainComplex, ComplexError};
use crate::dubois::{DuBoisTower, DuboisError, GradedReference, WedgeOperator, TOWER_WEIGHT};
use crate::filtered::{FilteredComplex, FilteredError};
use crate::linalg::{LinalgError, RatMatrix};

pub use custom::custom_from_json;
pub use forms::{truncated_de_rham, FormSpace};
pub use nodal::{build_nodal_normalization, build_nodal_union_family};
pub use smooth::{build_smooth_plane_family, fiber_restriction_smooth_check, smooth_reflection, smooth_relative_comparison};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("coefficient bound must be at least {min}, got {got}")]
    BoundTooSmall { min: u32, got: u32 },
    #[error("operation requires the smooth plane family")]
    NotSmooth,
    #[error("model file: {0}")]
    Format(String),
    #[error(transparent)]
    Dubois(#[from] DuboisError),
    #[error(transparent)]
    Filtered(#[from] FilteredError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub type Result<T, E = ModelError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    SmoothPlane,
    NodalUnion,
    NodalNormalization,
    Custom,
}

/// Reference for `Gr_E^p[p]`: a complex concentrated in degree 0, and
/// optionally the ambient map `(F^0)^{p+1} -> reference^0` that defines the
/// comparison on the first summand of `(E^p)^p`.
#[derive(Debug, Clone)]
pub struct GradedSpec {
    pub complex: CochainComplex,
    pub first_block: Option<RatMatrix>,
}

/// A model: the filtered complex, its wedge, reference complexes and basis
/// labels.
#[derive(Debug, Clone)]
pub struct ModelBundle {
    pub kind: ModelKind,
    pub bound: Option<u32>,
    pub filtered: FilteredComplex,
    pub wedge: WedgeOperator,
    /// `labels[m][i]` names basis vector `i` of the ambient degree `m`.
    pub labels: BTreeMap<i64, Vec<String>>,
    reference_relative: BTreeMap<i64, CochainComplex>,
    graded: BTreeMap<i64, GradedSpec>,
}

impl ModelBundle {
    pub(crate) fn new(
        kind: ModelKind,
        bound: Option<u32>,
        filtered: FilteredComplex,
        wedge: WedgeOperator,
        labels: BTreeMap<i64, Vec<String>>,
    ) -> Self {
        ModelBundle {
            kind,
            bound,
            filtered,
            wedge,
            labels,
            reference_relative: BTreeMap::new(),
            graded: BTreeMap::new(),
        }
    }

    pub(crate) fn with_references(
        mut self,
        relative: BTreeMap<i64, CochainComplex>,
        graded: BTreeMap<i64, GradedSpec>,
    ) -> Self {
        self.reference_relative = relative;
        self.graded = graded;
        self
    }

    /// Stand-in for the filtered relative complex at level `p`, if the model
    /// provides one.
    pub fn reference_relative(&self, p: i64) -> Option<&CochainComplex> {
        self.reference_relative.get(&p)
    }

    pub fn graded_spec(&self, p: i64) -> Option<&GradedSpec> {
        self.graded.get(&p)
    }

    pub fn label(&self, m: i64, i: usize) -> Option<&str> {
        self.labels.get(&m)?.get(i).map(String::as_str)
    }

    pub fn index_of_label(&self, m: i64, label: &str) -> Option<usize> {
        self.labels.get(&m)?.iter().position(|l| l == label)
    }

    /// References for `Gr_E^p[p]`, with comparison maps `E^p[p] -> ref`
    /// expressed in the bases of `tower`.
    pub fn graded_references(&self, tower: &DuBoisTower) -> Result<BTreeMap<i64, GradedReference>> {
        let mut out = BTreeMap::new();
        for (&p, spec) in &self.graded {
            if p < tower.p_min() || p >= tower.n() {
                continue;
            }
            let comparison = match &spec.first_block {
                None => None,
                Some(block) => Some(graded_comparison(tower, p, &spec.complex, block)?),
            };
            out.insert(p, GradedReference { complex: spec.complex.clone(), comparison });
        }
        Ok(out)
    }
}

fn graded_comparison(tower: &DuBoisTower, p: i64, reference: &CochainComplex, block: &RatMatrix) -> Result<ChainMap> {
    let source = tower.e(p)?.shift(p);
    let include = tower.f_level(p + 1)?.include.mat(p + 1).into_owned();
    let first = block * &include;
    Ok(ChainMap::from_fn(source.clone(), reference.clone(), 0, |m| {
        if m == 0 {
            first
                .hstack(&RatMatrix::zeros(reference.dim(0), source.dim(0) - first.cols()))
                .expect("comparison blocks")
        } else {
            RatMatrix::zeros(reference.dim(m), source.dim(m))
        }
    })?)
}

/// Block matrix helper: places `blocks[(i, j)]` at row block `i`, column
/// block `j` with the given block sizes.
pub(crate) fn assemble(row_sizes: &[usize], col_sizes: &[usize], blocks: &[((usize, usize), RatMatrix)]) -> RatMatrix {
    let rows: usize = row_sizes.iter().sum();
    let cols: usize = col_sizes.iter().sum();
    let mut m = RatMatrix::zeros(rows, cols);
    for ((i, j), b) in blocks {
        let r0: usize = row_sizes[..*i].iter().sum();
        let c0: usize = col_sizes[..*j].iter().sum();
        m.paste(r0, c0, b);
    }
    m
}

/// A complex concentrated in degree 0 at the tower weight.
pub(crate) fn in_degree_zero(dim: usize) -> CochainComplex {
    CochainComplex::concentrated(0, dim, TOWER_WEIGHT)
}
