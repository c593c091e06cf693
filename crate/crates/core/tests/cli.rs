use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn dubois(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dubois")).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn strip_timing(v: &mut Value) {
    if let Some(checks) = v["checks"].as_array_mut() {
        for c in checks {
            c["ms"] = Value::Null;
        }
    }
}

#[test]
fn smooth_all_checks_pass_as_json() {
    let dir = tempfile::tempdir().unwrap();
    let s = write(
        dir.path(),
        "s.scn",
        "model = smooth_plane\nD = 2\np_min = -2\nchecks = ses,subcomplex,assoc_graded,abs_to_rel,stationary,functorial,fiber_restriction\n",
    );
    let out = dubois(&["run", &s, "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["checks", "scenario", "verdict"]);
    assert_eq!(v["verdict"], "pass");
    let first = &v["checks"][0];
    assert!(first["name"].is_string() && first["ms"].is_u64());
    let result = &first["results"][0];
    assert!(result.get("p").is_some() && result["status"].is_string() && result["evidence"].is_string());
    assert!(result.get("detail").is_none());
}

#[test]
fn json_object_fields_keep_declaration_order() {
    let dir = tempfile::tempdir().unwrap();
    let s = write(dir.path(), "n.scn", "model = nodal_union\nD = 2\nchecks = ses\nformat = json\n");
    let out = dubois(&["run", &s]);
    let text = String::from_utf8(out.stdout).unwrap();
    let (a, b, c) = (text.find("\"scenario\"").unwrap(), text.find("\"checks\"").unwrap(), text.find("\"verdict\"").unwrap());
    assert!(a < b && b < c);
}

#[test]
fn reports_are_deterministic_modulo_timing() {
    let dir = tempfile::tempdir().unwrap();
    let s = write(dir.path(), "n.scn", "model = nodal_union\nD = 2\np_min = -2\nchecks = ses,subcomplex,assoc_graded,functorial,stationary\n");
    let run = || {
        let out = dubois(&["run", &s, "--format", "json"]);
        assert_eq!(out.status.code(), Some(0));
        let mut v: Value = serde_json::from_slice(&out.stdout).unwrap();
        strip_timing(&mut v);
        v
    };
    assert_eq!(run(), run());
}

#[test]
fn broken_custom_model_fails_validation() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "bad.json",
        r#"{"lo": 0, "dims": [1, 1, 1], "differentials": [[[1]], [[1]]]}"#,
    );
    let s = write(dir.path(), "c.scn", "model = custom\nfile = bad.json\nchecks = ses\n");
    let out = dubois(&["run", &s, "--format", "json"]);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "fail");
    let validate = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "validate_complex").unwrap();
    assert_eq!(validate["results"][0]["status"], "fail");
}

#[test]
fn parse_errors_exit_two_with_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let s = write(dir.path(), "bad.scn", "model = smooth_plane\nD = 1\nchecks = ses\n");
    let out = dubois(&["run", &s]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(dubois(&["run"]).status.code(), Some(2));
    assert_eq!(dubois(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(dubois(&["run", "/nonexistent/scenario"]).status.code(), Some(2));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let s = write(dir.path(), "s.scn", "model = smooth_plane\nD = 2\nchecks = ses\n");
    let target = dir.path().join("report.txt");
    let out = dubois(&["run", &s, "--out", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(target).unwrap();
    assert!(text.contains("verdict: pass"));
}

#[test]
fn selftest_passes() {
    let out = dubois(&["selftest"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("selftest: pass"));
}

#[test]
fn bundled_scenarios_pass() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios");
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "scn") {
            let out = dubois(&["run", path.to_str().unwrap()]);
            assert_eq!(out.status.code(), Some(0), "{}: {}", path.display(), String::from_utf8_lossy(&out.stdout));
        }
    }
}
