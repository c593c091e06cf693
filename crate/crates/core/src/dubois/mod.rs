//! The wedge operator, the tower `{E^p}` and its verifiers.

mod functorial;
mod tower;
mod verify;
mod wedge;

use thiserror::Error;

use crate::complexes::ComplexError;
use crate::filtered::FilteredError;
use crate::linalg::LinalgError;

pub use functorial::{gamma_levels, induce_tower_morphism, verify_functorial_diagram, FilteredMap};
pub use tower::{build_tower, DuBoisTower, TowerLevel, TOWER_WEIGHT};
pub use verify::{
    abs_to_rel_triangles, check_assoc_graded, graded_quotient, stationary_check, verify_base_case,
    verify_ses_tower, verify_subcomplex, zero_wedge_collapse, GradedReference,
};
pub use wedge::{validate_wedge, WedgeOperator};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DuboisError {
    #[error("wedge component in degree {degree}: {detail}")]
    WedgeShape { degree: i64, detail: String },
    #[error("wedge does not square to zero starting in degree {degree}")]
    WedgeNotSquareZero { degree: i64 },
    #[error("wedge does not commute with d in degree {degree}")]
    WedgeNotCommuting { degree: i64 },
    #[error("sign-normalized wedge violates the chain-map law in degree {degree}")]
    WedgeNotChainMap { degree: i64 },
    #[error("wedge does not map F^{level} into F^{} in degree {degree}", level + 1)]
    WedgeNotFiltered { level: i64, degree: i64 },
    #[error("tower floor {p_min} lies above n = {n}")]
    FloorTooHigh { p_min: i64, n: i64 },
    #[error("index {p} outside [{lo}, {hi}]")]
    IndexOutOfRange { p: i64, lo: i64, hi: i64 },
    #[error("no reference complex for p = {0}")]
    MissingReference(i64),
    #[error("map does not preserve level {level} of the filtration in degree {degree}")]
    NotFiltered { level: i64, degree: i64 },
    #[error("map does not intertwine the wedge operators in degree {degree}")]
    WedgeIncompatible { degree: i64 },
    #[error("towers are built over different ranges")]
    TowerMismatch,
    #[error(transparent)]
    Filtered(#[from] FilteredError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub type Result<T, E = DuboisError> = std::result::Result<T, E>;
