use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::{json, Value};
use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    doc: Value,
}

fn jcfrob(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_jcfrob"))
        .args(args)
        .output()
        .expect("binary runs");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let doc = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    Run {
        code: out.status.code().unwrap(),
        stdout,
        doc,
    }
}

fn write(dir: &TempDir, name: &str, v: &Value) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, serde_json::to_string_pretty(v).unwrap()).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn matrix(field: &str, rows: &[&[&str]]) -> Value {
    json!({"field": field, "n": rows.len(), "entries": rows})
}

fn clause(doc: &Value, name: &str) -> Option<bool> {
    doc["report"]["checks"]
        .as_array()?
        .iter()
        .find(|c| c["clause"] == name)
        .and_then(|c| c["passed"].as_bool())
}

#[test]
fn rotation_is_purely_vertical() {
    let dir = TempDir::new().unwrap();
    let rot = write(&dir, "rot2.json", &matrix("Q", &[&["0", "-1"], &["1", "0"]]));
    let r = jcfrob(&["cjc", s(&rot)]);
    assert_eq!(r.code, 0);
    let res = &r.doc["result"];
    assert_eq!(res["H"]["entries"], json!([["0", "0"], ["0", "0"]]));
    assert_eq!(res["V"]["entries"], json!([["0", "-1"], ["1", "0"]]));
    assert_eq!(res["N"]["entries"], json!([["0", "0"], ["0", "0"]]));
    assert_eq!(r.doc["command"], "cjc");
    assert_eq!(r.doc["input_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn jordan_block_is_not_semisimple() {
    let dir = TempDir::new().unwrap();
    let j = write(&dir, "jordan.json", &matrix("Q", &[&["1", "1"], &["0", "1"]]));
    let r = jcfrob(&["fine", s(&j)]);
    assert_eq!(r.code, 2);
    assert_eq!(r.doc["error"]["code"], "NotSemisimple");
}

#[test]
fn fine_round_trip_checks() {
    let dir = TempDir::new().unwrap();
    let m = write(
        &dir,
        "fine.json",
        &matrix("Q", &[&["1", "2", "0"], &["-3", "1", "0"], &["0", "0", "5"]]),
    );
    let r = jcfrob(&["fine", s(&m)]);
    assert_eq!(r.code, 0);
    let out = dir.path().join("out.json");
    std::fs::write(&out, &r.stdout).unwrap();
    let c = jcfrob(&["check", s(&m), s(&out)]);
    assert_eq!(c.code, 0);
    assert_eq!(c.doc["result"]["all_passed"], true);
    assert_eq!(c.doc["result"]["checked"], "fine");
}

#[test]
fn corrupted_vertical_part_fails_sum() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.json", &matrix("Q", &[&["2", "1", "0"], &["0", "2", "0"], &["0", "0", "-1"]]));
    let mut doc = jcfrob(&["cjc", s(&m)]).doc;
    assert_eq!(jcfrob(&["check", s(&m), s(&write(&dir, "ok.json", &doc))]).doc["result"]["all_passed"], true);
    doc["result"]["V"]["entries"][0][0] = json!("1/3");
    let c = jcfrob(&["check", s(&m), s(&write(&dir, "bad.json", &doc))]);
    assert_eq!(clause(&c.doc, "sum"), Some(false));
    assert_eq!(c.doc["result"]["all_passed"], false);
}

#[test]
fn apply_agrees_with_oracle_and_rechecks() {
    let dir = TempDir::new().unwrap();
    let k = write(
        &dir,
        "k.json",
        &matrix("Q", &[&["0", "-3/7", "2/7"], &["3/7", "0", "-6/7"], &["-2/7", "6/7", "0"]]),
    );
    for f in ["exp", "sin", "cos", "sinh", "cosh"] {
        let r = jcfrob(&["apply", s(&k), "--fn", f]);
        assert_eq!(r.code, 0, "{f}");
        assert_eq!(clause(&r.doc, "oracle_agreement"), Some(true), "{f}");
        let out = write(&dir, "apply.json", &r.doc);
        let c = jcfrob(&["check", s(&k), s(&out)]);
        assert_eq!(c.doc["result"]["all_passed"], true, "{f}: {}", c.stdout);
    }
}

#[test]
fn padic_apply_and_domain() {
    let dir = TempDir::new().unwrap();
    let three = write(&dir, "3i.json", &matrix("Q", &[&["3", "0"], &["0", "3"]]));
    let r = jcfrob(&["apply", s(&three), "--abs", "padic:3"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.doc["result"]["value"]["backend"], "padic");
    assert!(r.doc["result"]["value"]["matrix"]["valuation_bound"].as_i64().unwrap() >= 10);
    assert_eq!(clause(&r.doc, "doubled_cutoff"), Some(true));
    let c = jcfrob(&["check", s(&three), s(&write(&dir, "p.json", &r.doc))]);
    assert_eq!(c.doc["result"]["all_passed"], true);

    let id = write(&dir, "id.json", &matrix("Q", &[&["1", "0"], &["0", "1"]]));
    let d = jcfrob(&["domain", s(&id), "--abs", "padic:3"]);
    assert_eq!(d.code, 0);
    assert_eq!(d.doc["result"]["in_omega_hat"], false);
    let a = jcfrob(&["apply", s(&id), "--abs", "padic:3"]);
    assert_eq!(a.code, 2);
    assert_eq!(a.doc["error"]["code"], "NotInOmegaHat");
}

#[test]
fn custom_series_file() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.json", &matrix("Q", &[&["0", "1"], &["0", "0"]]));
    let series = write(&dir, "geo.json", &json!({"coefficients": ["1", "1", "1"], "radius": "1"}));
    let flag = format!("custom:{}", s(&series));
    // Nilpotent, so in the domain for any positive radius; not semisimple.
    let r = jcfrob(&["apply", s(&m), "--fn", &flag]);
    assert_eq!(r.code, 2, "{}", r.stdout);
    let n = write(&dir, "n.json", &matrix("Q", &[&["1/2", "0"], &["0", "-1/3"]]));
    let r = jcfrob(&["apply", s(&n), "--fn", &flag]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert_eq!(r.doc["result"]["series"]["coefficients"], json!(["1", "1", "1"]));
    assert_eq!(clause(&r.doc, "oracle_agreement"), Some(true));
}

#[test]
fn normalize_requires_positive_norms() {
    let dir = TempDir::new().unwrap();
    let rot = write(&dir, "rot.json", &matrix("Q", &[&["1", "-2"], &["1", "1"]]));
    let r = jcfrob(&["normalize", s(&rot)]);
    assert_eq!(r.code, 0);
    let c = jcfrob(&["check", s(&rot), s(&write(&dir, "n.json", &r.doc))]);
    assert_eq!(c.doc["result"]["all_passed"], true);
    let hyp = write(&dir, "hyp.json", &matrix("Q", &[&["0", "2"], &["1", "0"]]));
    let r = jcfrob(&["normalize", s(&hyp)]);
    assert_eq!(r.code, 2);
    assert_eq!(r.doc["error"]["code"], "NegativeNormComponent");
}

#[test]
fn factor_inputs() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.json", &json!(["-1", "0", "0", "0", "1"]));
    let r = jcfrob(&["factor", s(&f), "--field", "Fp:5"]);
    assert_eq!(r.code, 0);
    let degrees: Vec<usize> = r.doc["result"]["factors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["factor"].as_array().unwrap().len() - 1)
        .collect();
    assert_eq!(degrees, vec![1, 1, 1, 1]);
    assert_eq!(clause(&r.doc, "product"), Some(true));
    let c = jcfrob(&["check", s(&f), s(&write(&dir, "r.json", &r.doc))]);
    assert_eq!(c.doc["result"]["all_passed"], true);

    let g = write(&dir, "g.json", &json!({"field": "Q", "coeffs": ["2", "0", "1"]}));
    let r = jcfrob(&["factor", s(&g)]);
    assert_eq!(r.doc["result"]["factors"][0]["factor"], json!(["2", "0", "1"]));
}

#[test]
fn minpoly_and_jc() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.json", &matrix("Fp:3", &[&["1", "1"], &["0", "1"]]));
    let r = jcfrob(&["minpoly", s(&m)]);
    assert_eq!(r.doc["result"]["minimal_polynomial"], json!(["1", "1", "1"]));
    let r = jcfrob(&["jc", s(&m)]);
    assert_eq!(r.code, 0);
    assert_eq!(r.doc["result"]["N"]["entries"], json!([["0", "1"], ["0", "0"]]));
    let c = jcfrob(&["check", s(&m), s(&write(&dir, "jc.json", &r.doc))]);
    assert_eq!(c.doc["result"]["all_passed"], true);
}

#[test]
fn malformed_input_and_flags() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{not json").unwrap();
    let r = jcfrob(&["cjc", s(&bad)]);
    assert_eq!(r.code, 1);
    assert_eq!(r.doc["error"]["code"], "Parse");
    let ragged = write(&dir, "ragged.json", &json!({"field": "Q", "entries": [["1", "2"], ["3"]]}));
    assert_eq!(jcfrob(&["cjc", s(&ragged)]).doc["error"]["code"], "SchemaMismatch");
    let m = write(&dir, "m.json", &matrix("Q", &[&["1"]]));
    assert_ne!(jcfrob(&["cjc", s(&m), "--bogus"]).code, 0);
    assert_eq!(jcfrob(&["apply", s(&m), "--abs", "padic:4"]).code, 1);
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let m = write(
        &dir,
        "m.json",
        &matrix("Q", &[&["1", "2", "3"], &["0", "1", "4"], &["5", "6", "0"]]),
    );
    for args in [vec!["cjc"], vec!["factor", "--seed", "7"], vec!["apply", "--fn", "cos", "--prec", "96"]] {
        let mut a = args.clone();
        a.insert(1, s(&m));
        let first = jcfrob(&a).stdout;
        assert_eq!(first, jcfrob(&a).stdout);
    }
}
