use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn run(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weylchar"))
        .arg("--cache-dir")
        .arg(cache)
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(cache: &Path, args: &[&str]) -> String {
    let o = run(cache, args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

fn json(cache: &Path, args: &[&str]) -> Value {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    serde_json::from_str(&ok(cache, &all)).unwrap()
}

fn data(name: &str) -> String {
    let p = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data").join(name);
    std::fs::read_to_string(p).unwrap()
}

#[test]
fn dimension() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(ok(dir.path(), &["dimension", "F4", "0", "0", "0", "1"]).trim(), "26");
    assert_eq!(ok(dir.path(), &["dimension", "F4", "1,0,0,0"]).trim(), "52");
    assert_eq!(ok(dir.path(), &["dimension", "G2", "1", "0"]).trim(), "7");
    let v = json(dir.path(), &["dimension", "E6", "1", "0", "0", "0", "0", "0"]);
    assert_eq!(v["dim"], 27);
}

#[test]
fn character_of_a1() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(dir.path(), &["character", "A1", "3"]);
    assert_eq!(v["dim"], 4);
    let terms = v["poly"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 4);
    assert!(terms.iter().all(|t| t["c"] == "1"));
    let text = ok(dir.path(), &["character", "A1", "3"]);
    assert!(text.contains("u1^3 + u1^2 + u1 + 1"), "{text}");
}

#[test]
fn character_is_cached_on_disk() {
    let dir = tempfile::tempdir().unwrap();
    let first = ok(dir.path(), &["character", "F4", "0", "0", "1", "1"]);
    let files: Vec<_> = walk(dir.path());
    assert!(files.iter().any(|f| f.ends_with("system.json")), "{files:?}");
    assert!(files.iter().any(|f| f.ends_with("0_0_1_1.json")), "{files:?}");
    assert_eq!(ok(dir.path(), &["character", "F4", "0", "0", "1", "1"]), first);
    let fresh = Command::new(env!("CARGO_BIN_EXE_weylchar"))
        .args(["--no-cache", "character", "F4", "0", "0", "1", "1"])
        .output()
        .unwrap();
    assert_eq!(stdout(&fresh), first);
}

fn walk(dir: &Path) -> Vec<String> {
    let mut out = vec![];
    for e in std::fs::read_dir(dir).unwrap() {
        let p = e.unwrap().path();
        if p.is_dir() {
            out.extend(walk(&p));
        } else {
            out.push(p.to_string_lossy().into_owned());
        }
    }
    out
}

#[test]
fn specialized_character() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(dir.path(), &["character", "F4", "0", "0", "0", "1", "--spec", "x,x,y,y"]);
    let s = &v["specialized"];
    assert_eq!(s["vars"], serde_json::json!(["x", "y"]));
    let terms = s["poly"]["terms"].as_array().unwrap();
    let total: i64 = terms.iter().map(|t| t["c"].as_str().unwrap().parse::<i64>().unwrap()).sum();
    assert_eq!(total, 26);
    let constant = terms.iter().find(|t| t["e"] == serde_json::json!([0, 0])).unwrap();
    assert_eq!(constant["c"], "2");
    let bad = run(dir.path(), &["character", "F4", "0", "0", "0", "1", "--spec", "x,y"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn tensor_product() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(dir.path(), &["tensor", "F4", "1,0,0,0", "0,0,1,1"]);
    let rhs = v["rhs"].as_array().unwrap();
    assert_eq!(rhs.len(), 12);
    let twice = rhs.iter().find(|c| c["w"] == serde_json::json!([0, 0, 1, 1])).unwrap();
    assert_eq!(twice["mult"], 2);
    let text = ok(dir.path(), &["tensor", "F4", "1,0,0,0", "0,0,1,1"]);
    assert!(text.contains("12 constituents; dimension check 52 × 4096 = 212992"), "{text}");
}

#[test]
fn tables_match_reference_data() {
    let dir = tempfile::tempdir().unwrap();
    let out = ok(dir.path(), &["tables", "F4", "--match-paper", "f4"]);
    let rows = |s: &str| -> Vec<String> {
        s.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()).map(str::to_string).collect()
    };
    let expected: Vec<String> = rows(&data("f4_special_roots.tsv")).into_iter().chain(rows(&data("f4_tuples.tsv"))).collect();
    assert_eq!(rows(&out), expected);
    assert_eq!(ok(dir.path(), &["tables", "F4"]), out);
    let v = json(dir.path(), &["tables", "F4"]);
    assert_eq!(v["tuples"].as_array().unwrap().len(), 1152);
    let bad = run(dir.path(), &["tables", "G2", "--match-paper", "f4"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn verify_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = ok(dir.path(), &["verify", "F4"]);
    assert_eq!(out.lines().filter(|l| l.starts_with("[PASS]")).count(), 9, "{out}");
    let out = ok(dir.path(), &["verify", "B3"]);
    assert!(!out.contains("[FAIL]"), "{out}");
}

#[test]
fn custom_cartan_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g2.json");
    std::fs::write(&path, r#"{"cartan": [[2, -1], [-3, 2]]}"#).unwrap();
    let out = ok(dir.path(), &["dimension", path.to_str().unwrap(), "0", "1"]);
    assert_eq!(out.trim(), "7");
}

#[test]
fn usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["dimension", "F4", "1", "0"][..],
        &["dimension", "F4", "1", "0", "0", "-1"],
        &["dimension", "F4", "a", "0", "0", "0"],
        &["character", "Z9", "1"],
        &["tensor", "A2", "1,0", "1"],
        &["frobnicate"],
    ] {
        let o = run(dir.path(), args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}
