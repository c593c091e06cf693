//! Polynomial differential forms with coefficients of total degree `≤ D`.

use std::collections::HashMap;

use crate::complexes::CochainComplex;
use crate::linalg::{rat, Rat, RatMatrix};

/// Monomial exponents, one entry per coefficient variable.
pub type Monomial = Vec<u32>;

/// Forms `Σ c · x^a dx_S` where `x^a` has total degree `≤ bound` and `S`
/// ranges over subsets of `form_vars` (the variables whose differentials
/// are present). Degree-`k` basis: subsets of size `k` in lexicographic
/// order, each followed by all monomials.
#[derive(Debug, Clone)]
pub struct FormSpace {
    names: Vec<String>,
    form_vars: Vec<usize>,
    bound: u32,
    monomials: Vec<Monomial>,
    mono_index: HashMap<Monomial, usize>,
    subsets: Vec<Vec<Vec<usize>>>,
}

fn monomials(nvars: usize, bound: u32) -> Vec<Monomial> {
    fn rec(prefix: &mut Monomial, left: usize, budget: u32, out: &mut Vec<Monomial>) {
        if left == 0 {
            out.push(prefix.clone());
            return;
        }
        for e in 0..=budget {
            prefix.push(e);
            rec(prefix, left - 1, budget - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), nvars, bound, &mut out);
    out.sort_by(|a, b| {
        let (sa, sb): (u32, u32) = (a.iter().sum(), b.iter().sum());
        sa.cmp(&sb).then_with(|| b.cmp(a))
    });
    out
}

fn subsets_of(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        for mut rest in subsets_of(&items[i + 1..], k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// One term of the image of a basis form: coefficient, monomial, subset.
pub type Term = (Rat, Monomial, Vec<usize>);

impl FormSpace {
    pub fn new(names: &[&str], form_vars: &[usize], bound: u32) -> Self {
        let mut form_vars = form_vars.to_vec();
        form_vars.sort_unstable();
        form_vars.dedup();
        let monomials = monomials(names.len(), bound);
        let mono_index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let subsets = (0..=form_vars.len()).map(|k| subsets_of(&form_vars, k)).collect();
        FormSpace { names: names.iter().map(|s| s.to_string()).collect(), form_vars, bound, monomials, mono_index, subsets }
    }

    /// All variables carry differentials.
    pub fn full(names: &[&str], bound: u32) -> Self {
        let vars: Vec<usize> = (0..names.len()).collect();
        Self::new(names, &vars, bound)
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn top_degree(&self) -> usize {
        self.form_vars.len()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn dim(&self, k: i64) -> usize {
        if k < 0 || k as usize > self.top_degree() {
            return 0;
        }
        self.subsets[k as usize].len() * self.monomials.len()
    }

    /// `(monomial, subset)` of basis vector `i` in degree `k`.
    pub fn basis_element(&self, k: usize, i: usize) -> (&Monomial, &[usize]) {
        let n = self.monomials.len();
        (&self.monomials[i % n], &self.subsets[k][i / n])
    }

    pub fn index_of(&self, mono: &Monomial, subset: &[usize]) -> Option<usize> {
        let k = subset.len();
        let s = self.subsets.get(k)?.iter().position(|s| s == subset)?;
        Some(s * self.monomials.len() + self.mono_index.get(mono)?)
    }

    /// Matrix of a linear map into `target` degree `tk`, given on basis
    /// forms of degree `k`. Terms outside the target truncation are dropped.
    pub fn map_to(&self, k: usize, target: &FormSpace, tk: usize, f: impl Fn(&Monomial, &[usize]) -> Vec<Term>) -> RatMatrix {
        let mut m = RatMatrix::zeros(target.dim(tk as i64), self.dim(k as i64));
        for j in 0..self.dim(k as i64) {
            let (mono, subset) = self.basis_element(k, j);
            for (c, tm, ts) in f(mono, subset) {
                if let Some(i) = target.index_of(&tm, &ts) {
                    let v = m.get(i, j) + &c;
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    /// Exterior derivative `Ω^k -> Ω^{k+1}`.
    pub fn exterior_derivative(&self, k: usize) -> RatMatrix {
        self.map_to(k, self, k + 1, |mono, subset| {
            let mut out = Vec::new();
            for &i in &self.form_vars {
                if mono[i] == 0 || subset.contains(&i) {
                    continue;
                }
                let mut m = mono.clone();
                m[i] -= 1;
                let (s, sign) = insert_var(subset, i);
                out.push((rat(sign * mono[i] as i64), m, s));
            }
            out
        })
    }

    /// `α ↦ α ∧ dx_j`, from degree `k` to `k + 1`.
    pub fn wedge_right(&self, j: usize, k: usize) -> RatMatrix {
        self.map_to(k, self, k + 1, |mono, subset| {
            if subset.contains(&j) {
                return Vec::new();
            }
            let after = subset.iter().filter(|&&s| s > j).count() as i64;
            let (s, _) = insert_var(subset, j);
            vec![(rat(if after % 2 == 0 { 1 } else { -1 }), mono.clone(), s)]
        })
    }

    /// Contraction with `∂/∂x_j`, into `target` (same coefficient
    /// variables), from degree `k` to `k - 1`.
    pub fn contraction(&self, j: usize, k: usize, target: &FormSpace) -> RatMatrix {
        self.map_to(k, target, k.saturating_sub(1), |mono, subset| match subset.iter().position(|&s| s == j) {
            Some(pos) if k > 0 => {
                let rest: Vec<usize> = subset.iter().copied().filter(|&s| s != j).collect();
                vec![(rat(if pos % 2 == 0 { 1 } else { -1 }), mono.clone(), rest)]
            }
            _ => Vec::new(),
        })
    }

    /// `∂/∂x_j` on coefficients, degree `k` to itself.
    pub fn partial(&self, j: usize, k: usize) -> RatMatrix {
        self.map_to(k, self, k, |mono, subset| {
            if mono[j] == 0 {
                return Vec::new();
            }
            let mut m = mono.clone();
            m[j] -= 1;
            vec![(rat(mono[j] as i64), m, subset.to_vec())]
        })
    }

    /// The complex `Ω^0 -> ... -> Ω^r` with the given twist weight.
    pub fn complex(&self, twist_weight: i64) -> CochainComplex {
        let top = self.top_degree() as i64;
        CochainComplex::from_fn(0, top, twist_weight, |k| self.dim(k), |k| self.exterior_derivative(k as usize))
            .expect("exterior derivative has consistent shapes")
    }

    pub fn label(&self, k: usize, i: usize) -> String {
        let (mono, subset) = self.basis_element(k, i);
        let coeff: Vec<String> = mono
            .iter()
            .zip(&self.names)
            .filter(|(e, _)| **e > 0)
            .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        let coeff = if coeff.is_empty() { "1".to_string() } else { coeff.join("*") };
        if subset.is_empty() {
            return coeff;
        }
        let form: Vec<String> = subset.iter().map(|&s| format!("d{}", self.names[s])).collect();
        format!("{coeff} {}", form.join("^"))
    }

    pub fn labels(&self, k: usize) -> Vec<String> {
        (0..self.dim(k as i64)).map(|i| self.label(k, i)).collect()
    }
}

/// Inserts `i` into the sorted subset; the sign is that of moving `dx_i`
/// from the front to its sorted position.
fn insert_var(subset: &[usize], i: usize) -> (Vec<usize>, i64) {
    let before = subset.iter().filter(|&&s| s < i).count();
    let mut s = subset.to_vec();
    s.insert(before, i);
    (s, if before % 2 == 0 { 1 } else { -1 })
}

/// Polynomial de Rham complex of affine `num_vars`-space truncated to
/// coefficient degree `≤ bound`, weight 0.
pub fn truncated_de_rham(num_vars: usize, bound: u32) -> CochainComplex {
    let names: Vec<String> = (1..=num_vars).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    FormSpace::full(&refs, bound).complex(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::cohomology_dims;

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(2, 2).len(), 6);
        assert_eq!(monomials(1, 4).len(), 5);
        assert_eq!(monomials(2, 2)[0], vec![0, 0]);
    }

    #[test]
    fn one_variable_truncation() {
        let c = truncated_de_rham(1, 2);
        assert_eq!(c.dim(0), 3);
        assert_eq!(c.dim(1), 3);
        let h = cohomology_dims(&c).unwrap();
        assert_eq!((h[&0], h[&1]), (1, 1));
    }

    #[test]
    fn plane_dims_and_square_zero() {
        let c = truncated_de_rham(2, 2);
        assert_eq!((c.dim(0), c.dim(1), c.dim(2)), (6, 12, 6));
        assert!(c.validate().unwrap());
        let c3 = truncated_de_rham(3, 2);
        assert!(c3.validate().unwrap());
    }

    #[test]
    fn wedge_and_contraction_signs() {
        let s = FormSpace::full(&["t", "x"], 1);
        let one = vec![0, 0];
        let dx = s.index_of(&one, &[1]).unwrap();
        let dt = s.index_of(&one, &[0]).unwrap();
        let dtdx = s.index_of(&one, &[0, 1]).unwrap();
        let w = s.wedge_right(0, 1);
        // dx ∧ dt = -dt ∧ dx, dt ∧ dt = 0
        assert_eq!(*w.get(dtdx, dx), rat(-1));
        assert_eq!(*w.get(dtdx, dt), rat(0));
        let rel = FormSpace::new(&["t", "x"], &[1], 1);
        let iota = s.contraction(0, 2, &rel);
        let rdx = rel.index_of(&one, &[1]).unwrap();
        assert_eq!(*iota.get(rdx, dtdx), rat(1));
    }

    #[test]
    fn labels_are_distinct_and_round_trip() {
        let s = FormSpace::full(&["t", "x"], 2);
        for k in 0..=2 {
            let labels = s.labels(k);
            for (i, l) in labels.iter().enumerate() {
                assert_eq!(labels.iter().position(|x| x == l), Some(i));
            }
        }
        assert_eq!(s.label(0, 0), "1");
        let i = s.index_of(&vec![2, 0], &[0, 1]).unwrap();
        assert_eq!(s.label(2, i), "t^2 dt^dx");
    }
}
