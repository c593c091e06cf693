//! `X = {xy = 0}` over `A^1` via `f = x + y`.
//!
//! The hyperresolution square has `X~ = L1 ⊔ L2` (coordinates `u`, `v`),
//! `Z` the node and `Z~` its two preimages. The incarnation is the total
//! complex of `Ω_{X~} ⊕ Ω_Z -> Ω_{Z~}` with the `Z~` column one degree up:
//!
//! - degree 0: `O(L1) ⊕ O(L2) ⊕ O(Z)`
//! - degree 1: `Ω^1(L1) ⊕ Ω^1(L2) ⊕ O(Z~_1) ⊕ O(Z~_2)`
//!
//! with `d(g1, g2, c) = (dg1, dg2, g1(0) - c, g2(0) - c)`.

use std::collections::BTreeMap;

use crate::complexes::{ChainMap, CochainComplex};
use crate::dubois::{FilteredMap, WedgeOperator, TOWER_WEIGHT};
use crate::filtered::{bete_filtration, FilteredComplex};
use crate::linalg::{rat, RatMatrix};

use super::forms::FormSpace;
use super::{assemble, in_degree_zero, GradedSpec, ModelBundle, ModelError, ModelKind, Result};

struct Lines {
    l1: FormSpace,
    l2: FormSpace,
}

impl Lines {
    fn new(bound: u32) -> Self {
        Lines { l1: FormSpace::full(&["u"], bound), l2: FormSpace::full(&["v"], bound) }
    }

    /// Dimension of `O(L_i)`, equal to that of `Ω^1(L_i)`.
    fn n(&self) -> usize {
        self.l1.dim(0)
    }

    fn evaluation_at_zero(&self) -> RatMatrix {
        let mut e = RatMatrix::zeros(1, self.n());
        e.set(0, self.l1.index_of(&vec![0], &[]).expect("constant monomial"), rat(1));
        e
    }

    fn labels(&self, k: usize) -> Vec<String> {
        let mut out: Vec<String> = self.l1.labels(k).into_iter().map(|l| format!("L1:{l}")).collect();
        out.extend(self.l2.labels(k).into_iter().map(|l| format!("L2:{l}")));
        out
    }

    /// Wedge with `du ⊕ dv` on functions.
    fn wedge0(&self) -> RatMatrix {
        RatMatrix::block_diag(&self.l1.wedge_right(0, 0), &self.l2.wedge_right(0, 0))
    }
}

/// The nodal family; `n = 1`, `F^1 = Ω^1_{X~}` in degree 1.
pub fn build_nodal_union_family(bound: u32) -> Result<ModelBundle> {
    if bound < 2 {
        return Err(ModelError::BoundTooSmall { min: 2, got: bound });
    }
    let lines = Lines::new(bound);
    let n = lines.n();
    let ev = lines.evaluation_at_zero();
    let minus_one = RatMatrix::from_rows_i64(1, &[vec![-1]]);
    let d0 = assemble(
        &[n, n, 1, 1],
        &[n, n, 1],
        &[
            ((0, 0), lines.l1.exterior_derivative(0)),
            ((1, 1), lines.l2.exterior_derivative(0)),
            ((2, 0), ev.clone()),
            ((2, 2), minus_one.clone()),
            ((3, 1), ev),
            ((3, 2), minus_one),
        ],
    );
    let complex = CochainComplex::new(0, vec![2 * n + 1, 2 * n + 2], vec![d0], 0)?;
    let filtered = FilteredComplex::from_fn(complex.clone(), 1, |p, m| match (p, m) {
        (p, _) if p <= 0 => RatMatrix::identity(complex.dim(m)),
        (1, 1) => RatMatrix::identity(2 * n).vstack(&RatMatrix::zeros(2, 2 * n)).expect("F^1 span"),
        _ => RatMatrix::zeros(complex.dim(m), 0),
    })?;
    let w0 = assemble(&[2 * n, 2], &[2 * n, 1], &[((0, 0), lines.wedge0())]);
    let wedge = WedgeOperator::new(filtered.clone(), vec![w0, RatMatrix::zeros(0, 2 * n + 2)])?;

    let mut labels = BTreeMap::new();
    let mut l0 = lines.labels(0);
    l0.push("Z:1".into());
    let mut l1 = lines.labels(1);
    l1.extend(["Z~1:1".to_string(), "Z~2:1".to_string()]);
    labels.insert(0, l0);
    labels.insert(1, l1);

    // Ω^0_{X/C} ⊗ L ≅ Ω^1_X, and Ω^1_X = Gr_F^1[1] = Ω^1_{X~} in degree 0.
    let omega1 = in_degree_zero(2 * n);
    let projection = RatMatrix::identity(2 * n).hstack(&RatMatrix::zeros(2 * n, 2)).expect("projection");
    let mut graded = BTreeMap::new();
    graded.insert(0, GradedSpec { complex: omega1.clone(), first_block: Some(projection) });
    let mut relative = BTreeMap::new();
    relative.insert(0, omega1);
    relative.insert(1, CochainComplex::zero(TOWER_WEIGHT));

    Ok(ModelBundle::new(ModelKind::NodalUnion, Some(bound), filtered, wedge, labels).with_references(relative, graded))
}

/// The normalization `X~ -> X` as a model of its own (bête filtration of
/// `Ω_{X~}`, wedge with `du ⊕ dv`) together with the pull-back of forms
/// `γ : F_X -> F_{X~}`, which forgets the `Z` and `Z~` summands.
pub fn build_nodal_normalization(bound: u32) -> Result<(ModelBundle, FilteredMap)> {
    let nodal = build_nodal_union_family(bound)?;
    let lines = Lines::new(bound);
    let n = lines.n();
    let d0 = RatMatrix::block_diag(&lines.l1.exterior_derivative(0), &lines.l2.exterior_derivative(0));
    let complex = CochainComplex::new(0, vec![2 * n, 2 * n], vec![d0], 0)?;
    let filtered = bete_filtration(&complex);
    let wedge = WedgeOperator::new(filtered.clone(), vec![lines.wedge0(), RatMatrix::zeros(0, 2 * n)])?;
    let labels = [(0, lines.labels(0)), (1, lines.labels(1))].into_iter().collect();
    let mut graded = BTreeMap::new();
    graded.insert(0, GradedSpec { complex: in_degree_zero(2 * n), first_block: Some(RatMatrix::identity(2 * n)) });
    let bundle = ModelBundle::new(ModelKind::NodalNormalization, Some(bound), filtered.clone(), wedge, labels)
        .with_references(BTreeMap::new(), graded);

    let gamma = ChainMap::from_fn(nodal.filtered.ambient().clone(), complex, 0, |m| {
        let extra = if m == 0 { 1 } else { 2 };
        RatMatrix::identity(2 * n).hstack(&RatMatrix::zeros(2 * n, extra)).expect("pull-back blocks")
    })?;
    let gamma = FilteredMap::new(nodal.filtered, filtered, gamma)?;
    Ok((bundle, gamma))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::cohomology_dims;
    use crate::dubois::{build_tower, validate_wedge};
    use crate::filtered::{graded_piece, sub_complex, validate_filtration};

    #[test]
    fn d2_dims() {
        let b = build_nodal_union_family(2).unwrap();
        validate_filtration(&b.filtered).unwrap();
        validate_wedge(&b.wedge).unwrap();
        let f0 = b.filtered.ambient();
        assert_eq!((f0.dim(0), f0.dim(1)), (7, 8));
        let f1 = sub_complex(&b.filtered, 1).unwrap().complex;
        assert_eq!((f1.dim(0), f1.dim(1)), (0, 6));
        let gr1 = graded_piece(&b.filtered, 1).unwrap();
        assert_eq!((gr1.dim(0), gr1.dim(1)), (0, 6));
    }

    #[test]
    fn restriction_difference_entries() {
        let b = build_nodal_union_family(2).unwrap();
        let d = b.filtered.ambient().d(0);
        let z = b.index_of_label(0, "Z:1").unwrap();
        let one1 = b.index_of_label(0, "L1:1").unwrap();
        let u = b.index_of_label(0, "L1:u").unwrap();
        let zt1 = b.index_of_label(1, "Z~1:1").unwrap();
        assert_eq!(*d.get(zt1, one1), rat(1));
        assert_eq!(*d.get(zt1, z), rat(-1));
        assert_eq!(*d.get(zt1, u), rat(0));
    }

    #[test]
    fn node_is_connected() {
        let b = build_nodal_union_family(3).unwrap();
        let h = cohomology_dims(b.filtered.ambient()).unwrap();
        assert_eq!(h[&0], 1);
    }

    #[test]
    fn tower_e0_is_omega1_of_normalization() {
        let b = build_nodal_union_family(2).unwrap();
        let t = build_tower(&b.filtered, &b.wedge, -1).unwrap();
        let e0 = t.e(0).unwrap();
        assert_eq!(e0.dim(0), 6);
        assert_eq!(e0.total_dim(), 6);
    }

    #[test]
    fn normalization_map_is_filtered() {
        let (y, _gamma) = build_nodal_normalization(2).unwrap();
        validate_filtration(&y.filtered).unwrap();
        validate_wedge(&y.wedge).unwrap();
    }
}
