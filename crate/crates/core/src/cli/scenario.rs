//! The `key = value` scenario format.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{parse_rat, rat, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelChoice {
    SmoothPlane,
    NodalUnion,
    Custom,
}

impl ModelChoice {
    pub fn name(self) -> &'static str {
        match self {
            ModelChoice::SmoothPlane => "smooth_plane",
            ModelChoice::NodalUnion => "nodal_union",
            ModelChoice::Custom => "custom",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        match s {
            "smooth_plane" => Some(ModelChoice::SmoothPlane),
            "nodal_union" => Some(ModelChoice::NodalUnion),
            "custom" | "custom-from-file" | "custom_from_file" => Some(ModelChoice::Custom),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Ses,
    Subcomplex,
    AssocGraded,
    AbsToRel,
    Stationary,
    Functorial,
    FiberRestriction,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::Ses,
        Check::Subcomplex,
        Check::AssocGraded,
        Check::AbsToRel,
        Check::Stationary,
        Check::Functorial,
        Check::FiberRestriction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Ses => "ses",
            Check::Subcomplex => "subcomplex",
            Check::AssocGraded => "assoc_graded",
            Check::AbsToRel => "abs_to_rel",
            Check::Stationary => "stationary",
            Check::Functorial => "functorial",
            Check::FiberRestriction => "fiber_restriction",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Check::ALL.into_iter().find(|c| c.name() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "text" => Some(Format::Text),
            "json" => Some(Format::Json),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Scenario {
    pub model: ModelChoice,
    #[serde(rename = "D", skip_serializing_if = "Option::is_none")]
    pub bound: Option<u32>,
    pub p_min: i64,
    pub checks: Vec<Check>,
    #[serde(serialize_with = "serialize_rat")]
    pub fiber_t0: Rat,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub file: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    pub format: Format,
}

fn serialize_rat<S: serde::Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}", self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

/// Every violated constraint of a scenario document.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ScenarioError {
    pub violations: Vec<Violation>,
}

impl fmt::Display for ScenarioError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        write!(f, "{}", lines.join("\n"))
    }
}

const KEYS: [&str; 8] = ["model", "D", "p_min", "checks", "fiber_t0", "file", "output", "format"];

/// Parses a scenario: one `key = value` per line, `#` starts a comment,
/// lists are comma-separated. Defaults: `p_min = -1`, `fiber_t0 = 0`,
/// `format = text`.
pub fn parse_scenario(text: &[u8]) -> Result<Scenario, ScenarioError> {
    let mut errors = Vec::new();
    let mut err = |line: Option<usize>, message: String| errors.push(Violation { line, message });
    let text = match std::str::from_utf8(text) {
        Ok(t) => t,
        Err(e) => {
            err(None, format!("scenario is not UTF-8: {e}"));
            return Err(ScenarioError { violations: errors });
        }
    };

    let mut fields: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            err(Some(line), format!("expected `key = value`, got {content:?}"));
            continue;
        };
        let (key, value) = (key.trim(), value.trim());
        let Some(&key) = KEYS.iter().find(|k| **k == key) else {
            err(Some(line), format!("unknown key {key:?}"));
            continue;
        };
        if let Some((first, _)) = fields.insert(key, (line, value)) {
            err(Some(line), format!("duplicate key {key:?} (first set on line {first})"));
        }
    }

    let line_of = |k: &str| fields.get(k).map(|(l, _)| *l);

    let model = match fields.get("model") {
        None => {
            err(None, "missing required key \"model\"".into());
            None
        }
        Some(&(line, v)) => {
            let m = ModelChoice::parse(v);
            if m.is_none() {
                err(Some(line), format!("model must be smooth_plane, nodal_union or custom, got {v:?}"));
            }
            m
        }
    };

    let bound = match fields.get("D") {
        None => None,
        Some(&(line, v)) => match v.parse::<u32>() {
            Ok(d) if d >= 2 => Some(d),
            Ok(d) => {
                err(Some(line), format!("D must be at least 2, got {d}"));
                None
            }
            Err(_) => {
                err(Some(line), format!("D must be a natural number, got {v:?}"));
                None
            }
        },
    };
    if bound.is_none() && !fields.contains_key("D") && matches!(model, Some(ModelChoice::SmoothPlane | ModelChoice::NodalUnion)) {
        err(None, "missing required key \"D\" for this model".into());
    }

    let p_min = match fields.get("p_min") {
        None => -1,
        Some(&(line, v)) => match v.parse::<i64>() {
            Ok(p) if p <= 0 => p,
            Ok(p) => {
                err(Some(line), format!("p_min must be at most 0, got {p}"));
                -1
            }
            Err(_) => {
                err(Some(line), format!("p_min must be an integer, got {v:?}"));
                -1
            }
        },
    };

    let mut checks = Vec::new();
    match fields.get("checks") {
        None => err(None, "missing required key \"checks\"".into()),
        Some(&(line, v)) => {
            for item in v.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                match Check::parse(item) {
                    Some(c) if checks.contains(&c) => err(Some(line), format!("check {item:?} listed twice")),
                    Some(c) => checks.push(c),
                    None => err(Some(line), format!("unknown check {item:?}")),
                }
            }
            if checks.is_empty() && !v.split(',').any(|s| !s.trim().is_empty()) {
                err(Some(line), "checks must not be empty".into());
            }
        }
    }

    let fiber_t0 = match fields.get("fiber_t0") {
        None => rat(0),
        Some(&(line, v)) => parse_rat(v).unwrap_or_else(|| {
            err(Some(line), format!("fiber_t0 must be a rational number, got {v:?}"));
            rat(0)
        }),
    };

    let format = match fields.get("format") {
        None => Format::Text,
        Some(&(line, v)) => Format::parse(v).unwrap_or_else(|| {
            err(Some(line), format!("format must be text or json, got {v:?}"));
            Format::Text
        }),
    };

    let file = fields.get("file").map(|(_, v)| PathBuf::from(*v));
    let output = fields.get("output").map(|(_, v)| PathBuf::from(*v));

    if checks.contains(&Check::Stationary) && p_min > -2 {
        err(line_of("checks"), format!("check \"stationary\" requires p_min <= -2, got {p_min}"));
    }
    if checks.contains(&Check::AbsToRel) && p_min > -1 {
        err(line_of("checks"), format!("check \"abs_to_rel\" requires p_min <= -1, got {p_min}"));
    }
    match model {
        Some(ModelChoice::Custom) => {
            if file.is_none() {
                err(None, "model \"custom\" requires key \"file\"".into());
            }
            for c in [Check::AssocGraded, Check::FiberRestriction] {
                if checks.contains(&c) {
                    err(line_of("checks"), format!("check {:?} is not available for custom models", c.name()));
                }
            }
        }
        Some(ModelChoice::NodalUnion) if checks.contains(&Check::FiberRestriction) => {
            err(line_of("checks"), "check \"fiber_restriction\" requires model smooth_plane".into());
        }
        Some(_) if file.is_some() => {
            err(line_of("file"), "key \"file\" is only used by model custom".into());
        }
        _ => {}
    }
    if fields.contains_key("fiber_t0") && !checks.contains(&Check::FiberRestriction) {
        err(line_of("fiber_t0"), "fiber_t0 is only used by check \"fiber_restriction\"".into());
    }

    if !errors.is_empty() {
        errors.sort_by_key(|v| v.line.unwrap_or(0));
        return Err(ScenarioError { violations: errors });
    }
    Ok(Scenario {
        model: model.expect("checked above"),
        bound,
        p_min,
        checks,
        fiber_t0,
        file,
        output,
        format,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_with_defaults() {
        let s = parse_scenario(b"model = smooth_plane\nD = 2\nchecks = ses,subcomplex").unwrap();
        assert_eq!(s.model, ModelChoice::SmoothPlane);
        assert_eq!(s.bound, Some(2));
        assert_eq!(s.p_min, -1);
        assert_eq!(s.checks, vec![Check::Ses, Check::Subcomplex]);
        assert_eq!(s.format, Format::Text);
    }

    #[test]
    fn bound_constraint() {
        let e = parse_scenario(b"model = smooth_plane\nD = 1\nchecks = ses").unwrap_err();
        assert_eq!(e.violations.len(), 1);
        assert_eq!(e.violations[0].line, Some(2));
        assert!(e.violations[0].message.contains("at least 2"));
    }

    #[test]
    fn stationary_needs_deeper_floor() {
        let e = parse_scenario(b"model = smooth_plane\nD = 2\nchecks = stationary").unwrap_err();
        assert!(e.to_string().contains("p_min <= -2"), "{e}");
    }

    #[test]
    fn all_violations_are_reported() {
        let text = b"# header\nmodel = torus\nD = x\nbogus = 1\nchecks = ses, nope\np_min = 3\n";
        let e = parse_scenario(text).unwrap_err();
        let lines: Vec<Option<usize>> = e.violations.iter().map(|v| v.line).collect();
        assert_eq!(lines, vec![Some(2), Some(3), Some(4), Some(5), Some(6)]);
    }

    #[test]
    fn comments_and_rationals() {
        let s = parse_scenario(
            b"model = smooth_plane  # the plane\nD = 3\nchecks = fiber_restriction\nfiber_t0 = -1/2\nformat = json\n",
        )
        .unwrap();
        assert_eq!(s.fiber_t0, crate::linalg::frac(-1, 2));
        assert_eq!(s.format, Format::Json);
    }

    #[test]
    fn custom_needs_file() {
        let e = parse_scenario(b"model = custom\nchecks = ses").unwrap_err();
        assert!(e.to_string().contains("file"));
        let s = parse_scenario(b"model = custom-from-file\nfile = m.json\nchecks = ses").unwrap();
        assert_eq!(s.bound, None);
    }

    #[test]
    fn duplicates_and_empty_checks() {
        let e = parse_scenario(b"model = nodal_union\nD = 2\nD = 3\nchecks = ").unwrap_err();
        assert_eq!(e.violations.len(), 2);
    }
}
