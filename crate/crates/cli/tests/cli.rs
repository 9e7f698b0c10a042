use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use orbifukaya::json::{self, CategoryJson, ComplexJson, HochschildJson};
use orbifukaya::surface::builders;
use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbifukaya")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write_complex(dir: &TempDir, name: &str, c: orbifukaya::surface::PolygonComplex) -> PathBuf {
    let p = path(dir, name);
    std::fs::write(&p, json::to_string(&ComplexJson::from_complex(&c))).unwrap();
    p
}

#[test]
fn classify_star() {
    let dir = TempDir::new().unwrap();
    let star = write_complex(&dir, "star.json", builders::orbifold_disk_star(3).unwrap());
    let o = run(&["classify", "--in", s(&star)]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some("Admissible"));
    assert!(out.contains("class: Formal"), "{}", out);
}

#[test]
fn classify_right_annulus() {
    let dir = TempDir::new().unwrap();
    let c = write_complex(&dir, "right.json", builders::orbifold_annulus_figure_right().unwrap());
    let o = run(&["classify", "--in", s(&c)]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).lines().next(), Some("Invalid"));
}

#[test]
fn classify_sixth_example() {
    let dir = TempDir::new().unwrap();
    let c = write_complex(&dir, "ex6.json", builders::example_dissection(6).unwrap());
    let o = run(&["classify", "--in", s(&c)]);
    assert_eq!(stdout(&o).lines().next(), Some("NewWithOrbifoldPolygons"));
}

#[test]
fn validate_reports_topology() {
    let dir = TempDir::new().unwrap();
    let c = write_complex(&dir, "cyl.json", builders::cylinder_one_stop(3).unwrap());
    let o = run(&["validate", "--in", s(&c)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("χ = 0, boundary components = 2"), "{}", stdout(&o));
}

#[test]
fn cylinder_hochschild_and_deformation() {
    let dir = TempDir::new().unwrap();
    let c = write_complex(&dir, "cyl.json", builders::cylinder_one_stop(4).unwrap());
    let (cat, hh, def) = (path(&dir, "cat.json"), path(&dir, "hh.json"), path(&dir, "def.json"));
    assert_eq!(run(&["build", "--in", s(&c), "--out", s(&cat), "--check"]).status.code(), Some(0));
    let o = run(&["hochschild", "--in", s(&cat), "--out", s(&hh)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("dim = 1"));
    let doc: HochschildJson = json::parse(&std::fs::read_to_string(&hh).unwrap()).unwrap();
    assert_eq!(doc.dimension, 1);

    let o = run(&["deform", "--algebra", s(&cat), "--cochain", s(&hh), "--out", s(&def)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("Maurer–Cartan holds"));
    let o = run(&["check-ainf", "--in", s(&def)]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn worked_example_four() {
    let o = run(&["examples", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("DG, not formal; transferred μ₃ present"));
}

#[test]
fn worked_examples_pass() {
    for k in ["1", "2", "3", "5", "6"] {
        let o = run(&["examples", k, "--quiet"]);
        assert_eq!(o.status.code(), Some(0), "example {}", k);
    }
}

#[test]
fn pipeline_reports_higher_product() {
    let o = run(&["pipeline", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("μ3("), "{}", stdout(&o));
}

#[test]
fn orbit_of_the_double_cover() {
    let dir = TempDir::new().unwrap();
    let (c, cat, act, orb) = (path(&dir, "dc.json"), path(&dir, "cat.json"), path(&dir, "act.json"), path(&dir, "orb.json"));
    assert_eq!(run(&["examples", "--fixture", "double-cover:3", "--out", s(&c)]).status.code(), Some(0));
    assert_eq!(run(&["examples", "--fixture", "double-cover-action:3", "--out", s(&act)]).status.code(), Some(0));
    assert_eq!(run(&["build", "--in", s(&c), "--out", s(&cat)]).status.code(), Some(0));
    let o = run(&["orbit", "--cover", s(&cat), "--action", s(&act), "--out", s(&orb)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(run(&["check-ainf", "--in", s(&orb)]).status.code(), Some(0));
}

#[test]
fn twisted_cone() {
    let dir = TempDir::new().unwrap();
    let base = CategoryJson::from_category(&orbifukaya::fukaya::build_category(&builders::cylinder_one_stop(3).unwrap()).unwrap());
    let doc = |shift: i64| {
        serde_json::json!({
            "base": base,
            "complexes": [{
                "name": "cone",
                "entries": [{ "object": "g1", "shift": 0 }, { "object": "g2", "shift": shift }],
                "delta": [{ "from": 0, "to": 1, "terms": [{ "morphism": "q1", "coeff": "1" }] }]
            }]
        })
        .to_string()
    };
    let (good, bad, out) = (path(&dir, "good.json"), path(&dir, "bad.json"), path(&dir, "out.json"));
    std::fs::write(&good, doc(-1)).unwrap();
    std::fs::write(&bad, doc(0)).unwrap();
    let o = run(&["tw", "--verify", s(&good), "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("H•End(cone) = 1@0"), "{}", stdout(&o));
    assert_eq!(run(&["check-ainf", "--in", s(&out)]).status.code(), Some(0));
    assert_eq!(run(&["tw", "--in", s(&bad)]).status.code(), Some(1));
}

#[test]
fn failed_check_exits_one() {
    let dir = TempDir::new().unwrap();
    let cat = orbifukaya::fukaya::build_category(&builders::cylinder_one_stop(4).unwrap()).unwrap();
    let mut doc = CategoryJson::from_category(&cat);
    // without q2∘q1 the triple (q3, q2, q1) is no longer associative
    let before = doc.mu.len();
    doc.mu.retain(|e| e.inputs != ["q2", "q1"]);
    assert_eq!(doc.mu.len(), before - 1);
    let p = path(&dir, "broken.json");
    std::fs::write(&p, json::to_string(&doc)).unwrap();
    let o = run(&["check-ainf", "--in", s(&p)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL A∞ relations"), "{}", stdout(&o));
}

#[test]
fn usage_and_io_exit_codes() {
    let dir = TempDir::new().unwrap();
    assert_eq!(run(&["classify"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["examples", "9"]).status.code(), Some(2));
    assert_eq!(run(&["pipeline", "--n", "3", "--m", "5"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--in", s(&path(&dir, "missing.json"))]).status.code(), Some(3));
    let bad = path(&dir, "bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(run(&["classify", "--in", s(&bad)]).status.code(), Some(3));
    std::fs::write(&bad, r#"{"arcs": ["a"], "polygons": [{"sides": [{"arc": "zz", "end": 0}], "corners": []}]}"#).unwrap();
    assert_eq!(run(&["classify", "--in", s(&bad)]).status.code(), Some(3));
}

#[test]
fn report_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let c = write_complex(&dir, "star.json", builders::orbifold_disk_star(4).unwrap());
    let r = path(&dir, "report.json");
    let read = |p: &Path| {
        let mut v: Value = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    };
    let mut reports = Vec::new();
    for _ in 0..2 {
        assert_eq!(run(&["build", "--in", s(&c), "--check", "--quiet", "--report", s(&r)]).status.code(), Some(0));
        reports.push(read(&r));
    }
    let (a, b) = (&reports[0], &reports[1]);
    assert_eq!(a, b);
    assert_eq!(a["passed"], Value::Bool(true));
    assert_eq!(a["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn emitted_json_round_trips() {
    let dir = TempDir::new().unwrap();
    let c = path(&dir, "ex4.json");
    assert_eq!(run(&["examples", "4", "--quiet", "--out", s(&c)]).status.code(), Some(0));
    let text = std::fs::read_to_string(&c).unwrap();
    let parsed: ComplexJson = json::parse(&text).unwrap();
    assert_eq!(parsed, ComplexJson::from_complex(&builders::example_dissection(4).unwrap()));

    let (cat, cat2) = (path(&dir, "cat.json"), path(&dir, "cat2.json"));
    assert_eq!(run(&["build", "--in", s(&c), "--out", s(&cat)]).status.code(), Some(0));
    assert_eq!(run(&["minimal-model", "--in", s(&cat), "--out", s(&cat2), "--quiet"]).status.code(), Some(0));
    let first: CategoryJson = json::parse(&std::fs::read_to_string(&cat).unwrap()).unwrap();
    let again = CategoryJson::from_category(&first.to_category().unwrap());
    assert_eq!(first, again);
    let mm: CategoryJson = json::parse(&std::fs::read_to_string(&cat2).unwrap()).unwrap();
    assert!(mm.mu.iter().any(|e| e.n == 3));
}

#[test]
fn schema_flag() {
    for cmd in ["classify", "check-ainf", "deform", "orbit", "tw"] {
        let o = run(&[cmd, "--schema"]);
        assert_eq!(o.status.code(), Some(0));
        let v: Value = serde_json::from_slice(&o.stdout).unwrap();
        assert!(v.get("$schema").is_some(), "{}", cmd);
    }
}
