use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use dubois::complexes::{cohomology_dims, cone, direct_sum, quasi_iso, ChainMap};
use dubois::linalg::{rat, RatMatrix};
use dubois::testing::random_complex;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = RatMatrix> {
    prop::collection::vec(-3i64..=3, rows * cols).prop_map(move |v| {
        let mut m = RatMatrix::zeros(rows, cols);
        for (k, x) in v.into_iter().enumerate() {
            m.set(k / cols, k % cols, rat(x));
        }
        m
    })
}

fn any_matrix() -> impl Strategy<Value = RatMatrix> {
    (0usize..6, 0usize..6).prop_flat_map(|(r, c)| matrix(r, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rank_nullity(m in any_matrix()) {
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank() + k.cols(), m.cols());
        prop_assert!((&m * &k).is_zero());
    }

    #[test]
    fn rref_is_idempotent(m in any_matrix()) {
        let (r, pivots) = m.rref();
        let (rr, pivots2) = r.rref();
        prop_assert_eq!(&r, &rr);
        prop_assert_eq!(pivots, pivots2);
    }

    #[test]
    fn shift_moves_cohomology(seed in any::<u64>(), k in -3i64..=3) {
        let (c, _) = random_complex(&mut StdRng::seed_from_u64(seed), 0, 3, 4);
        let shifted = c.shift(k);
        prop_assert!(shifted.validate().unwrap());
        let h = cohomology_dims(&c).unwrap();
        let hs = cohomology_dims(&shifted).unwrap();
        for (m, d) in h {
            prop_assert_eq!(hs.get(&(m - k)).copied().unwrap_or(0), d);
        }
    }

    #[test]
    fn direct_sum_adds_cohomology(a in any::<u64>(), b in any::<u64>()) {
        let (x, hx) = random_complex(&mut StdRng::seed_from_u64(a), -1, 3, 4);
        let (y, hy) = random_complex(&mut StdRng::seed_from_u64(b), 0, 3, 4);
        let s = direct_sum(&x, &y).unwrap();
        prop_assert!(s.validate().unwrap());
        let h = cohomology_dims(&s).unwrap();
        for m in -1..=2 {
            let expected = hx.get(&m).copied().unwrap_or(0) + hy.get(&m).copied().unwrap_or(0);
            prop_assert_eq!(h.get(&m).copied().unwrap_or(0), expected);
        }
    }

    #[test]
    fn identity_cone_is_acyclic(seed in any::<u64>()) {
        let (c, _) = random_complex(&mut StdRng::seed_from_u64(seed), -1, 4, 5);
        let id = ChainMap::identity(&c);
        let k = cone(&id).unwrap();
        prop_assert!(k.complex.validate().unwrap());
        prop_assert!(cohomology_dims(&k.complex).unwrap().values().all(|&d| d == 0));
        prop_assert!(quasi_iso(&id).unwrap());
    }
}
