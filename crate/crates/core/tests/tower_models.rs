use dubois::complexes::cohomology_dims;
use dubois::dubois::*;
use dubois::linalg::rat;
use dubois::models::*;
use dubois::report::{CheckReport, Evidence};

fn assert_passed(r: &CheckReport) {
    let failures: Vec<_> = r.failures().map(|f| (f.p, f.detail.clone())).collect();
    assert!(failures.is_empty(), "{}: {failures:?}", r.name);
    assert!(!r.results.is_empty(), "{} is empty", r.name);
}

#[test]
fn smooth_plane_tower_verifies() {
    for bound in [2, 3] {
        let b = build_smooth_plane_family(bound).unwrap();
        let t = build_tower(&b.filtered, &b.wedge, -2).unwrap();
        assert_passed(&verify_ses_tower(&t));
        assert_passed(&verify_base_case(&t));
        assert_passed(&verify_subcomplex(&t));
        assert_passed(&abs_to_rel_triangles(&t).unwrap());
        let refs = b.graded_references(&t).unwrap();
        let graded = check_assoc_graded(&t, &refs).unwrap();
        assert_passed(&graded);
        assert!(graded.results.iter().all(|r| r.evidence == Evidence::Exact));
        assert!(stationary_check(&t).unwrap());
        let gamma = smooth_reflection(&b).unwrap();
        let alpha = induce_tower_morphism(&gamma, &t, &t).unwrap();
        assert_passed(&verify_functorial_diagram(&alpha, &gamma, &t, &t));
    }
}

#[test]
fn nodal_tower_verifies() {
    for bound in [2, 3] {
        let b = build_nodal_union_family(bound).unwrap();
        let t = build_tower(&b.filtered, &b.wedge, -2).unwrap();
        assert_passed(&verify_ses_tower(&t));
        assert_passed(&verify_base_case(&t));
        assert_passed(&verify_subcomplex(&t));
        assert_passed(&abs_to_rel_triangles(&t).unwrap());
        let refs = b.graded_references(&t).unwrap();
        assert_passed(&check_assoc_graded(&t, &refs).unwrap());
        assert!(!stationary_check(&t).unwrap());
        let h = cohomology_dims(&graded_quotient(&t, -1).unwrap().complex).unwrap();
        eprintln!("nodal Gr_E^-1 cohomology {h:?}");

        let (y, gamma) = build_nodal_normalization(bound).unwrap();
        let ty = build_tower(&y.filtered, &y.wedge, -2).unwrap();
        let alpha = induce_tower_morphism(&gamma, &t, &ty).unwrap();
        assert_passed(&verify_functorial_diagram(&alpha, &gamma, &t, &ty));
    }
}

#[test]
fn fiber_restriction_at_zero_and_one() {
    let b = build_smooth_plane_family(2).unwrap();
    for t0 in [rat(0), rat(1)] {
        assert_passed(&fiber_restriction_smooth_check(&b, &t0).unwrap());
    }
}
