//! Decreasing filtrations by subcomplexes.
//!
//! Levels are spans in the coordinates of the ambient complex `F^0`, one
//! spanning matrix per level and degree. Below level 0 the filtration is
//! constant (`F^p = F^0`), above `n + 1` it is zero.

use std::borrow::Cow;

use thiserror::Error;

use crate::complexes::{quotient_complex, ChainMap, CochainComplex, ComplexError, QuotientComplex};
use crate::linalg::{subspace_contains, LinalgError, RatMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FilteredError {
    #[error("level {level} is given with {found} spaces, expected {expected}")]
    LevelShape { level: i64, expected: usize, found: usize },
    #[error("level {level}, degree {degree}: spanning vectors have {found} coordinates, expected {expected}")]
    SpanShape { level: i64, degree: i64, expected: usize, found: usize },
    #[error("F^0 is not the whole ambient space in degree {degree}")]
    NotExhaustive { degree: i64 },
    #[error("F^{} ⊄ F^{level} in degree {degree}", level + 1)]
    NotDecreasing { level: i64, degree: i64 },
    #[error("d(F^{level}) ⊄ F^{level} in degree {degree}")]
    NotSubcomplex { level: i64, degree: i64 },
    #[error("F^(n+1) is nonzero in degree {degree}")]
    TopNotZero { degree: i64 },
    #[error("level {level} is outside 0..={max}")]
    LevelOutOfRange { level: i64, max: i64 },
    #[error("ambient complex: {0}")]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub type Result<T> = std::result::Result<T, FilteredError>;

#[derive(Debug, Clone)]
pub struct FilteredComplex {
    ambient: CochainComplex,
    n: i64,
    /// `levels[p][i]` spans `F^p` in degree `ambient.lo() + i`, for
    /// `p = 0..=n+1`.
    levels: Vec<Vec<RatMatrix>>,
}

impl FilteredComplex {
    /// `levels[p]` holds one spanning matrix per ambient degree, for
    /// `p = 0..=n+1`. Only shapes are checked here; the filtration axioms are
    /// checked by [`validate_filtration`].
    pub fn new(ambient: CochainComplex, n: i64, levels: Vec<Vec<RatMatrix>>) -> Result<Self> {
        let expected_levels = (n + 2).max(0) as usize;
        if levels.len() != expected_levels {
            return Err(FilteredError::LevelShape {
                level: levels.len() as i64,
                expected: expected_levels,
                found: levels.len(),
            });
        }
        let degrees = ambient.total_degrees();
        for (p, level) in levels.iter().enumerate() {
            if level.len() != degrees {
                return Err(FilteredError::LevelShape { level: p as i64, expected: degrees, found: level.len() });
            }
            for (m, span) in ambient.degrees().zip(level) {
                if span.rows() != ambient.dim(m) {
                    return Err(FilteredError::SpanShape {
                        level: p as i64,
                        degree: m,
                        expected: ambient.dim(m),
                        found: span.rows(),
                    });
                }
            }
        }
        Ok(FilteredComplex { ambient, n, levels })
    }

    /// Builds levels from a function `(p, m) -> span` for `p = 0..=n+1`.
    pub fn from_fn(ambient: CochainComplex, n: i64, span: impl Fn(i64, i64) -> RatMatrix) -> Result<Self> {
        let levels = (0..=n + 1).map(|p| ambient.degrees().map(|m| span(p, m)).collect()).collect();
        Self::new(ambient, n, levels)
    }

    pub fn ambient(&self) -> &CochainComplex {
        &self.ambient
    }

    /// Index with `F^{n+1} = 0`.
    pub fn n(&self) -> i64 {
        self.n
    }

    /// Spanning columns of `F^p` in degree `m`, in ambient coordinates.
    pub fn level(&self, p: i64, m: i64) -> Cow<'_, RatMatrix> {
        let dim = self.ambient.dim(m);
        if m < self.ambient.lo() || m > self.ambient.hi() {
            return Cow::Owned(RatMatrix::zeros(0, 0));
        }
        let i = (m - self.ambient.lo()) as usize;
        if p <= 0 {
            Cow::Borrowed(&self.levels[0][i])
        } else if p <= self.n + 1 {
            Cow::Borrowed(&self.levels[p as usize][i])
        } else {
            Cow::Owned(RatMatrix::zeros(dim, 0))
        }
    }

    /// `F^p` as an abstract complex (basis: independent spanning columns)
    /// with its inclusion into the ambient complex. Any integer `p` is
    /// accepted; the filtration is constant below 0 and zero above `n + 1`.
    pub fn level_complex(&self, p: i64) -> Result<SubComplex> {
        let bases: Vec<RatMatrix> =
            self.ambient.degrees().map(|m| self.level(p, m).column_basis()).collect();
        let lo = self.ambient.lo();
        let basis = |m: i64| -> Cow<'_, RatMatrix> {
            if m < lo || m > self.ambient.hi() {
                Cow::Owned(RatMatrix::zeros(self.ambient.dim(m), 0))
            } else {
                Cow::Borrowed(&bases[(m - lo) as usize])
            }
        };
        let mut diffs = Vec::new();
        for m in lo..self.ambient.hi() {
            let image = &*self.ambient.d(m) * &basis(m);
            let restricted = basis(m + 1)
                .solve(&image)
                .map_err(|_| FilteredError::NotSubcomplex { level: p, degree: m })?;
            diffs.push(restricted);
        }
        let dims = bases.iter().map(RatMatrix::cols).collect();
        let complex = CochainComplex::new(lo, dims, diffs, self.ambient.twist_weight())?;
        let include = ChainMap::from_fn(complex.clone(), self.ambient.clone(), 0, |m| basis(m).into_owned())?;
        Ok(SubComplex { complex, include })
    }

    /// The inclusion `F^{p+1} -> F^p` in the bases chosen by
    /// [`FilteredComplex::level_complex`].
    pub fn inclusion(&self, p: i64) -> Result<ChainMap> {
        let upper = self.level_complex(p + 1)?;
        let lower = self.level_complex(p)?;
        let mut mats = Vec::new();
        for m in upper.complex.degrees() {
            let coords = lower
                .include
                .mat(m)
                .solve(&upper.include.mat(m))
                .map_err(|_| FilteredError::NotDecreasing { level: p, degree: m })?;
            mats.push(coords);
        }
        Ok(ChainMap::new(upper.complex, lower.complex, 0, mats)?)
    }

    /// `F^p / F^{p+1}` with the quotient data, for any integer `p`.
    pub fn graded_quotient(&self, p: i64) -> Result<QuotientComplex> {
        let incl = self.inclusion(p)?;
        let lower = incl.target().clone();
        Ok(quotient_complex(&lower, |m| incl.mat(m).into_owned())?)
    }
}

impl CochainComplex {
    fn total_degrees(&self) -> usize {
        (self.hi() - self.lo() + 1).max(0) as usize
    }
}

/// A filtration level realized as a complex in its own right.
#[derive(Debug, Clone)]
pub struct SubComplex {
    pub complex: CochainComplex,
    pub include: ChainMap,
}

/// `Ok(())` iff `F^0` is everything, the levels decrease, each level is a
/// subcomplex and `F^{n+1} = 0`. The error names the first violation.
pub fn validate_filtration(f: &FilteredComplex) -> Result<()> {
    let c = &f.ambient;
    if !c.validate()? {
        return Err(ComplexError::NotAComplex(c.lo()).into());
    }
    for m in c.degrees() {
        if f.level(0, m).rank() != c.dim(m) {
            return Err(FilteredError::NotExhaustive { degree: m });
        }
    }
    for p in 0..=f.n {
        for m in c.degrees() {
            if !subspace_contains(&f.level(p, m), &f.level(p + 1, m))? {
                return Err(FilteredError::NotDecreasing { level: p, degree: m });
            }
        }
    }
    for p in 0..=f.n + 1 {
        for m in c.degrees() {
            let image = &*c.d(m) * &*f.level(p, m);
            if !subspace_contains(&f.level(p, m + 1), &image)? {
                return Err(FilteredError::NotSubcomplex { level: p, degree: m });
            }
        }
    }
    for m in c.degrees() {
        if f.level(f.n + 1, m).rank() != 0 {
            return Err(FilteredError::TopNotZero { degree: m });
        }
    }
    Ok(())
}

/// The stupid filtration `σ_{≥p}`: `F^p` is everything in degrees `≥ p` and
/// zero below, for `p ≥ 1`; `F^0` is the whole complex; `n = max(hi, 0)`.
pub fn bete_filtration(c: &CochainComplex) -> FilteredComplex {
    let n = c.hi().max(0);
    FilteredComplex::from_fn(c.clone(), n, |p, m| {
        if p <= 0 || m >= p {
            RatMatrix::identity(c.dim(m))
        } else {
            RatMatrix::zeros(c.dim(m), 0)
        }
    })
    .expect("stupid filtration has consistent shapes")
}

/// `F^p` as a complex plus its inclusion into `F^0`, for `0 ≤ p ≤ n + 1`.
pub fn sub_complex(f: &FilteredComplex, p: i64) -> Result<SubComplex> {
    if p < 0 || p > f.n + 1 {
        return Err(FilteredError::LevelOutOfRange { level: p, max: f.n + 1 });
    }
    f.level_complex(p)
}

/// `Gr^p = F^p / F^{p+1}` with the induced differential, `0 ≤ p ≤ n`.
pub fn graded_piece(f: &FilteredComplex, p: i64) -> Result<CochainComplex> {
    if p < 0 || p > f.n {
        return Err(FilteredError::LevelOutOfRange { level: p, max: f.n });
    }
    Ok(f.graded_quotient(p)?.complex)
}

/// True iff `0 -> A -> B -> C -> 0` is exact in every degree, for degree-0
/// chain maps `a: A -> B` and `b: B -> C` of one common twist weight.
pub fn check_ses(a: &ChainMap, b: &ChainMap) -> Result<bool> {
    for map in [a, b] {
        if map.degree() != 0 {
            return Err(ComplexError::MapDegree { expected: 0, found: map.degree() }.into());
        }
        if let Some(m) = map.chain_law_failure() {
            return Err(ComplexError::NotAChainMap(m).into());
        }
    }
    let weights = [
        a.source().twist_weight(),
        a.target().twist_weight(),
        b.source().twist_weight(),
        b.target().twist_weight(),
    ];
    if let Some(&w) = weights.iter().find(|&&w| w != weights[0]) {
        return Err(ComplexError::WeightMismatch { left: weights[0], right: w }.into());
    }
    let (lo, hi) = window(&[a.source(), a.target(), b.source(), b.target()]);
    for m in lo..=hi {
        if a.target().dim(m) != b.source().dim(m) {
            return Err(ComplexError::Shape {
                degree: m,
                detail: "middle terms of the sequence differ".into(),
            }
            .into());
        }
    }
    for m in lo..=hi {
        let (da, db, dc) = (a.source().dim(m), a.target().dim(m), b.target().dim(m));
        let am = a.mat(m);
        let bm = b.mat(m);
        let injective = am.rank() == da;
        let surjective = bm.rank() == dc;
        let composite_zero = (&*bm * &*am).is_zero();
        if !(injective && surjective && composite_zero && da + dc == db) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn window(cs: &[&CochainComplex]) -> (i64, i64) {
    let nonempty: Vec<_> = cs.iter().filter(|c| c.hi() >= c.lo()).collect();
    if nonempty.is_empty() {
        return (0, -1);
    }
    (
        nonempty.iter().map(|c| c.lo()).min().unwrap(),
        nonempty.iter().map(|c| c.hi()).max().unwrap(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::cohomology_dims;
    use crate::linalg::rat;

    fn line() -> CochainComplex {
        let d = RatMatrix::from_rows_i64(3, &[vec![0, 1, 0], vec![0, 0, 2], vec![0, 0, 0]]);
        CochainComplex::new(0, vec![3, 3], vec![d], 0).unwrap()
    }

    #[test]
    fn bete_is_valid() {
        let f = bete_filtration(&line());
        assert_eq!(f.n(), 1);
        validate_filtration(&f).unwrap();
        let single = CochainComplex::concentrated(0, 2, 0);
        let g = bete_filtration(&single);
        assert_eq!(g.n(), 0);
        validate_filtration(&g).unwrap();
        assert_eq!(sub_complex(&g, 0).unwrap().complex.total_dim(), 2);
        assert_eq!(sub_complex(&g, 1).unwrap().complex.total_dim(), 0);
    }

    #[test]
    fn bete_graded_pieces_have_zero_differential() {
        let c = line();
        let f = bete_filtration(&c);
        for p in 0..=f.n() {
            let gr = graded_piece(&f, p).unwrap();
            assert_eq!(gr.dim(p), c.dim(p));
            assert_eq!(gr.total_dim(), c.dim(p));
            for m in gr.degrees() {
                assert!(gr.d(m).is_zero());
            }
        }
    }

    #[test]
    fn sub_complex_bounds() {
        let f = bete_filtration(&line());
        let s0 = sub_complex(&f, 0).unwrap();
        assert_eq!(s0.complex, *f.ambient());
        assert_eq!(s0.include, ChainMap::identity(f.ambient()));
        assert!(sub_complex(&f, 2).unwrap().complex.is_zero());
        assert!(matches!(sub_complex(&f, 3), Err(FilteredError::LevelOutOfRange { .. })));
        assert!(sub_complex(&f, -1).is_err());
    }

    #[test]
    fn non_subcomplex_level_rejected() {
        // F^1 = span{t} in degree 0 only: d(t) = dt leaves it.
        let c = line();
        let f = FilteredComplex::from_fn(c.clone(), 1, |p, m| match (p, m) {
            (0, _) => RatMatrix::identity(c.dim(m)),
            (1, 0) => RatMatrix::from_rows_i64(1, &[vec![0], vec![1], vec![0]]),
            _ => RatMatrix::zeros(c.dim(m), 0),
        })
        .unwrap();
        assert_eq!(validate_filtration(&f), Err(FilteredError::NotSubcomplex { level: 1, degree: 0 }));
    }

    #[test]
    fn span_not_basis_is_the_contract() {
        let c = line();
        let doubled = FilteredComplex::from_fn(c.clone(), 1, |p, m| {
            let span = bete_filtration(&c).level(p, m).into_owned();
            span.hstack(&span.scale(&rat(3))).unwrap()
        })
        .unwrap();
        validate_filtration(&doubled).unwrap();
        let h = cohomology_dims(&sub_complex(&doubled, 1).unwrap().complex).unwrap();
        assert_eq!(h[&1], 3);
    }

    #[test]
    fn ses_examples() {
        let c = line();
        let id = ChainMap::identity(&c);
        let zero = CochainComplex::zero(0);
        let to_zero = ChainMap::zero(&c, &zero, 0);
        let from_zero = ChainMap::zero(&zero, &c, 0);
        assert!(check_ses(&from_zero, &id).unwrap());
        assert!(check_ses(&id, &to_zero).unwrap());
        assert!(!check_ses(&from_zero, &to_zero).unwrap());
        let tw = ChainMap::identity(&c.twist(1));
        assert!(check_ses(&from_zero, &tw).is_err());
    }

    #[test]
    fn filtration_ses_rows() {
        let f = bete_filtration(&line());
        for p in 0..=f.n() {
            let incl = f.inclusion(p).unwrap();
            let q = f.graded_quotient(p).unwrap();
            assert!(check_ses(&incl, &q.projection).unwrap(), "row {p}");
        }
    }
}
