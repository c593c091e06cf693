//! User-supplied models in JSON.
//!
//! ```json
//! {
//!   "lo": 0,
//!   "dims": [1, 1],
//!   "differentials": [[[0]]],
//!   "filtration": { "n": 1, "levels": [[[[1]], [[1]]], [[[]], [[1]]], [[[]], [[]]]] },
//!   "wedge": [[[1]], []]
//! }
//! ```
//!
//! Matrices are lists of rows; entries are integers or strings such as
//! `"-3/4"`. `differentials[i]` is `d^{lo+i}`. `filtration.levels[p][i]`
//! spans `F^p` in degree `lo + i` for `0 ≤ p ≤ n + 1`; the default is the
//! bête filtration. `wedge[i]` is the wedge out of degree `lo + i`; the
//! default is zero. Only shapes are checked here: the scenario runner
//! reports `d^2 ≠ 0` and filtration or wedge violations as failed checks.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::complexes::CochainComplex;
use crate::dubois::WedgeOperator;
use crate::filtered::{bete_filtration, FilteredComplex};
use crate::linalg::{parse_rat, rat, Rat, RatMatrix};

use super::{ModelBundle, ModelError, ModelKind, Result};

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Entry {
    Int(i64),
    Text(String),
}

type RawMatrix = Vec<Vec<Entry>>;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFiltration {
    n: i64,
    levels: Vec<Vec<RawMatrix>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    #[serde(default)]
    lo: i64,
    dims: Vec<usize>,
    #[serde(default)]
    differentials: Vec<RawMatrix>,
    filtration: Option<RawFiltration>,
    wedge: Option<Vec<RawMatrix>>,
}

fn entry(e: &Entry, what: &str) -> Result<Rat> {
    match e {
        Entry::Int(i) => Ok(rat(*i)),
        Entry::Text(s) => parse_rat(s).ok_or_else(|| ModelError::Format(format!("{what}: bad rational {s:?}"))),
    }
}

/// A matrix with `rows` rows. `cols` is enforced when given, otherwise
/// taken from the data.
fn matrix(raw: &RawMatrix, rows: usize, cols: Option<usize>, what: &str) -> Result<RatMatrix> {
    let data_rows: Vec<&Vec<Entry>> = raw.iter().filter(|r| !r.is_empty() || rows > 0).collect();
    if rows == 0 || data_rows.is_empty() {
        let c = cols.unwrap_or(0);
        if raw.iter().any(|r| !r.is_empty()) || (rows > 0 && c > 0) {
            return Err(ModelError::Format(format!("{what}: expected {rows}x{c}")));
        }
        return Ok(RatMatrix::zeros(rows, c));
    }
    if raw.len() != rows {
        return Err(ModelError::Format(format!("{what}: expected {rows} rows, got {}", raw.len())));
    }
    let c = cols.unwrap_or(raw[0].len());
    let mut m = RatMatrix::zeros(rows, c);
    for (i, row) in raw.iter().enumerate() {
        if row.len() != c {
            return Err(ModelError::Format(format!("{what}: row {i} has {} entries, expected {c}", row.len())));
        }
        for (j, e) in row.iter().enumerate() {
            m.set(i, j, entry(e, what)?);
        }
    }
    Ok(m)
}

/// Parses a custom model. Shapes must be consistent; algebraic properties
/// are left to the validators.
pub fn custom_from_json(text: &str) -> Result<ModelBundle> {
    let raw: RawModel = serde_json::from_str(text).map_err(|e| ModelError::Format(e.to_string()))?;
    let lo = raw.lo;
    let dims = raw.dims;
    let dim = |m: i64| -> usize {
        if m < lo {
            return 0;
        }
        dims.get((m - lo) as usize).copied().unwrap_or(0)
    };
    let expected = dims.len().saturating_sub(1);
    if raw.differentials.len() != expected {
        return Err(ModelError::Format(format!(
            "{} differentials for {} degrees (expected {expected})",
            raw.differentials.len(),
            dims.len()
        )));
    }
    let mut diffs = Vec::new();
    for (i, d) in raw.differentials.iter().enumerate() {
        let m = lo + i as i64;
        diffs.push(matrix(d, dim(m + 1), Some(dim(m)), &format!("differential d^{m}"))?);
    }
    let complex = CochainComplex::new(lo, dims.clone(), diffs, 0)?;

    let filtered = match &raw.filtration {
        None => bete_filtration(&complex),
        Some(f) => {
            if f.n < 0 {
                return Err(ModelError::Format(format!("filtration n = {} is negative", f.n)));
            }
            if f.levels.len() != (f.n + 2) as usize {
                return Err(ModelError::Format(format!(
                    "filtration has {} levels, expected n + 2 = {}",
                    f.levels.len(),
                    f.n + 2
                )));
            }
            let mut levels = Vec::new();
            for (p, level) in f.levels.iter().enumerate() {
                if level.len() != dims.len() {
                    return Err(ModelError::Format(format!("level {p} has {} degrees, expected {}", level.len(), dims.len())));
                }
                let spans = level
                    .iter()
                    .enumerate()
                    .map(|(i, s)| matrix(s, dims[i], None, &format!("F^{p} in degree {}", lo + i as i64)))
                    .collect::<Result<Vec<_>>>()?;
                levels.push(spans);
            }
            FilteredComplex::new(complex.clone(), f.n, levels)?
        }
    };

    let wedge = match &raw.wedge {
        None => WedgeOperator::zero(filtered.clone()),
        Some(ws) => {
            if ws.len() != dims.len() {
                return Err(ModelError::Format(format!("wedge has {} components for {} degrees", ws.len(), dims.len())));
            }
            let mats = ws
                .iter()
                .enumerate()
                .map(|(i, w)| {
                    let m = lo + i as i64;
                    matrix(w, dim(m + 1), Some(dim(m)), &format!("wedge out of degree {m}"))
                })
                .collect::<Result<Vec<_>>>()?;
            WedgeOperator::new(filtered.clone(), mats)?
        }
    };

    let labels: BTreeMap<i64, Vec<String>> =
        complex.degrees().map(|m| (m, (0..complex.dim(m)).map(|i| format!("e{m}_{i}")).collect())).collect();
    Ok(ModelBundle::new(ModelKind::Custom, None, filtered, wedge, labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dubois::validate_wedge;
    use crate::filtered::validate_filtration;

    #[test]
    fn documented_example_parses() {
        let text = r#"{
          "lo": 0,
          "dims": [1, 1],
          "differentials": [[[0]]],
          "filtration": { "n": 1, "levels": [[[[1]], [[1]]], [[], [[1]]], [[], []]] },
          "wedge": [[[1]], []]
        }"#;
        let b = custom_from_json(text).unwrap();
        validate_filtration(&b.filtered).unwrap();
        validate_wedge(&b.wedge).unwrap();
        assert_eq!(b.label(1, 0), Some("e1_0"));
    }

    #[test]
    fn rationals_and_defaults() {
        let text = r#"{"dims": [2, 1], "differentials": [[["1/2", "-3"]]]}"#;
        let b = custom_from_json(text).unwrap();
        assert_eq!(*b.filtered.ambient().d(0).get(0, 0), crate::linalg::frac(1, 2));
        assert!(b.wedge.is_zero());
        assert_eq!(b.filtered.n(), 1);
    }

    #[test]
    fn shape_errors() {
        assert!(custom_from_json(r#"{"dims": [2, 1], "differentials": [[[1]]]}"#).is_err());
        assert!(custom_from_json(r#"{"dims": [2, 1]}"#).is_err());
        assert!(custom_from_json(r#"{"dims": [1], "extra": 1}"#).is_err());
        assert!(custom_from_json(r#"{"dims": [1, 1], "differentials": [[["x"]]]}"#).is_err());
    }

    #[test]
    fn square_nonzero_is_accepted_here() {
        let text = r#"{"dims": [1, 1, 1], "differentials": [[[1]], [[1]]]}"#;
        let b = custom_from_json(text).unwrap();
        assert!(!b.filtered.ambient().validate().unwrap());
    }
}
