//! Random complexes with known cohomology, for fuzzing and the self-test.

use std::collections::BTreeMap;

use rand::Rng;

use crate::complexes::CochainComplex;
use crate::linalg::{rat, RatMatrix};

/// An invertible integer matrix: a product of random elementary row
/// operations applied to the identity.
pub fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> RatMatrix {
    let mut m = RatMatrix::identity(n);
    if n < 2 {
        return m;
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = rat(rng.gen_range(-2..=2));
        for col in 0..n {
            let v = m.get(i, col) + &(&c * m.get(j, col));
            m.set(i, col, v);
        }
    }
    m
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, range: i64) -> RatMatrix {
    let mut m = RatMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, rat(rng.gen_range(-range..=range)));
        }
    }
    m
}

/// A random complex with `dims[m] ≤ max_dim` over `len` consecutive
/// degrees starting at `lo`, together with its cohomology dimensions.
///
/// In a standard basis each `C^m` splits as `B ⊕ H ⊕ K` with `d` mapping
/// `K` isomorphically onto `B` of the next degree; conjugating by random
/// invertible matrices hides the splitting.
pub fn random_complex<R: Rng>(rng: &mut R, lo: i64, len: usize, max_dim: usize) -> (CochainComplex, BTreeMap<i64, usize>) {
    let dims: Vec<usize> = (0..len).map(|_| rng.gen_range(0..=max_dim)).collect();
    // ranks[i] = rank of d^{lo+i}
    let mut ranks = vec![0usize; len];
    let mut incoming = 0;
    for i in 0..len {
        let room = dims[i] - incoming;
        let next = if i + 1 < len { dims[i + 1] } else { 0 };
        ranks[i] = if i + 1 < len { rng.gen_range(0..=room.min(next)) } else { 0 };
        incoming = ranks[i];
    }
    let bases: Vec<RatMatrix> = dims.iter().map(|&n| random_invertible(rng, n)).collect();
    let mut diffs = Vec::new();
    for i in 0..len.saturating_sub(1) {
        let r = ranks[i];
        let mut e = RatMatrix::zeros(dims[i + 1], dims[i]);
        for k in 0..r {
            // last r basis vectors of C^i onto the first r of C^{i+1}
            e.set(k, dims[i] - r + k, rat(1));
        }
        let inv = bases[i].inverse().expect("invertible by construction");
        diffs.push(&(&bases[i + 1] * &e) * &inv);
    }
    let mut h = BTreeMap::new();
    for i in 0..len {
        let incoming = if i == 0 { 0 } else { ranks[i - 1] };
        h.insert(lo + i as i64, dims[i] - ranks[i] - incoming);
    }
    let c = CochainComplex::new(lo, dims, diffs, 0).expect("shapes by construction");
    (c, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::cohomology_dims;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn generator_cohomology_matches() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let (c, h) = random_complex(&mut rng, -1, 4, 5);
            assert!(c.validate().unwrap());
            let computed = cohomology_dims(&c).unwrap();
            for (m, d) in h {
                assert_eq!(computed.get(&m).copied().unwrap_or(0), d);
            }
        }
    }
}
