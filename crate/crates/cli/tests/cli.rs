use std::path::{Path, PathBuf};

use gcq_cli::format::{hcq_json, parse_hcq, to_pretty};
use gcq_cli::{run_command, Outcome, EXIT_FAIL, EXIT_INPUT, EXIT_PASS};
use gcq_core::constructions::{group_algebra_hcq, loop_function_hcq, mirror_construction, LoopTable};
use gcq_core::exactlin::Field;
use gcq_core::grading::GroupTable;
use serde_json::{json, Value};
use tempfile::TempDir;

fn run(args: &[&str]) -> Outcome {
    run_command(std::iter::once("gcq").chain(args.iter().copied()))
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write(dir: &TempDir, name: &str, v: &Value) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, to_pretty(v)).unwrap();
    p
}

fn json_report(out: &Outcome) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}{}", out.stdout, out.stderr))
}

fn example(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let out = dir.path().join(name);
    let mut full = vec!["example"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", path_str(&out)]);
    let r = run(&full);
    assert_eq!(r.code, EXIT_PASS, "{}", r.stderr);
    out
}

fn kc2_ore(delta_g: [&str; 2]) -> Value {
    json!({
        "chi": ["1", "-1"],
        "r": {"0": ["0", "1"]},
        "delta": {"0": [["0", delta_g[0]], ["0", delta_g[1]]]},
    })
}

#[test]
fn verify_generated_group_algebra() {
    let dir = TempDir::new().unwrap();
    let h = example(&dir, "kc2.json", &["--kind", "group-algebra", "--group", "c2"]);
    let out = run(&["verify", path_str(&h)]);
    assert_eq!(out.code, EXIT_PASS, "{}", out.stdout);
    assert!(out.stdout.contains("verdict PASS"));
    assert!(out.stdout.contains("coassociative"));
}

#[test]
fn counit_with_wrong_length_is_a_shape_error() {
    let dir = TempDir::new().unwrap();
    let h = group_algebra_hcq(&GroupTable::cyclic(2), Field::Rational);
    let mut v = hcq_json(&h);
    v["counit"] = json!(["1", "1", "1"]);
    let p = write(&dir, "bad.json", &v);
    let out = run(&["verify", path_str(&p)]);
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stderr.contains("/counit"), "{}", out.stderr);
    assert!(out.stderr.contains("shape error"), "{}", out.stderr);
}

#[test]
fn zero_denominator_is_a_located_parse_error() {
    let dir = TempDir::new().unwrap();
    let h = group_algebra_hcq(&GroupTable::cyclic(2), Field::Rational);
    let mut v = hcq_json(&h);
    v["antipode"]["0"][1][0] = json!("1/0");
    let p = write(&dir, "bad.json", &v);
    let out = run(&["verify", path_str(&p)]);
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stderr.contains("parse error at /antipode/0/1/0"), "{}", out.stderr);
    assert!(out.stderr.contains("zero denominator"), "{}", out.stderr);
}

#[test]
fn numeric_scalars_and_bad_keys_are_rejected() {
    let dir = TempDir::new().unwrap();
    let h = group_algebra_hcq(&GroupTable::cyclic(2), Field::Rational);
    let mut v = hcq_json(&h);
    v["counit"] = json!([1, 1]);
    let out = run(&["verify", path_str(&write(&dir, "a.json", &v))]);
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stderr.contains("/counit/0"));

    let mut v = hcq_json(&h);
    v["delta"]["0,1"] = v["delta"]["0,0"].clone();
    let out = run(&["verify", path_str(&write(&dir, "b.json", &v))]);
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stderr.contains("unexpected key \"0,1\""), "{}", out.stderr);

    let p = dir.path().join("c.json");
    std::fs::write(&p, "{not json").unwrap();
    assert_eq!(run(&["verify", path_str(&p)]).code, EXIT_INPUT);
    assert_eq!(run(&["verify", "/nonexistent/h.json"]).code, EXIT_INPUT);
}

#[test]
fn taft_over_gf7_passes_at_degree_three() {
    let dir = TempDir::new().unwrap();
    let h = example(&dir, "taft.json", &["--kind", "taft", "--n", "3", "--q", "2", "--field", "p7"]);
    let ore = dir.path().join("taft.ore.json");
    assert!(ore.exists());
    let out = run(&["--report", "json", "ore-verify", path_str(&h), path_str(&ore), "--degree", "3"]);
    assert_eq!(out.code, EXIT_PASS, "{}", out.stdout);
    let doc = json_report(&out);
    assert_eq!(doc["verdict"], "pass");
    let ids: Vec<&str> = doc["checks"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    for id in ["ore.d3", "base.alg.assoc", "ext.comult.mult", "ext.antipode.generator", "ext.coquasi.left.s1", "skew_primitive"] {
        assert!(ids.contains(&id), "missing {id}");
    }
    assert_eq!(doc["inputs"].as_array().unwrap().len(), 2);
    assert_eq!(doc["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn forced_d3_failure_names_the_monomial() {
    let dir = TempDir::new().unwrap();
    let h = example(&dir, "kc2.json", &["--kind", "group-algebra", "--group", "c2"]);
    let ore = write(&dir, "ore.json", &kc2_ore(["1", "0"]));

    let out = run(&["ore-check", path_str(&h), path_str(&ore)]);
    assert_eq!(out.code, EXIT_FAIL);
    assert!(out.stdout.contains("ore.d3"));

    let out = run(&["ore-verify", path_str(&h), path_str(&ore), "--degree", "2"]);
    assert_eq!(out.code, EXIT_FAIL);
    assert!(out.stdout.contains("rerun with --force"));

    let out = run(&["--report", "json", "ore-verify", path_str(&h), path_str(&ore), "--degree", "2", "--force"]);
    assert_eq!(out.code, EXIT_FAIL);
    let doc = json_report(&out);
    let failing = doc["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["id"] == "ext.comult.mult" && c["verdict"] == "fail" && c["subject"] == "grades (0,0) at y, g")
        .expect("multiplicativity failure on y·g");
    assert_ne!(failing["witness"]["left"], failing["witness"]["right"]);
    assert!(out.stdout.contains("ext.forced"));
}

#[test]
fn reports_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let h = example(&dir, "m.json", &["--kind", "mirror", "--group", "c2", "--grading", "s3"]);
    let a = run(&["--report", "json", "verify", path_str(&h)]);
    let b = run(&["--report", "json", "verify", path_str(&h)]);
    assert_eq!(a, b);
    let a = run(&["verify", path_str(&h)]);
    let b = run(&["verify", path_str(&h)]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn serialization_round_trip_preserves_verdicts() {
    let moufang = loop_function_hcq(&LoopTable::moufang12(), Field::prime(3).unwrap()).unwrap();
    let instances = [
        group_algebra_hcq(&GroupTable::s3(), Field::Rational),
        mirror_construction(&group_algebra_hcq(&GroupTable::cyclic(3), Field::prime(7).unwrap()), &GroupTable::cyclic(2))
            .unwrap(),
        moufang,
    ];
    for h in instances {
        let text = to_pretty(&hcq_json(&h));
        let v: Value = serde_json::from_str(&text).unwrap();
        let back = parse_hcq("mem", &v).unwrap();
        assert_eq!(back, h);
        assert_eq!(back.verify_structure(), h.verify_structure());
        assert_eq!(back.verify_coquasigroup(), h.verify_coquasigroup());
    }
}

#[test]
fn example_kinds_verify() {
    let dir = TempDir::new().unwrap();
    let cases: [(&str, &[&str]); 4] = [
        ("lf.json", &["--kind", "loop-function", "--loop", "moufang12"]),
        ("mm.json", &["--kind", "mirror", "--loop", "c3", "--grading", "c2", "--field", "GF(5)"]),
        ("du.json", &["--kind", "dualize", "--loop", "moufang12"]),
        ("dg.json", &["--kind", "dualize", "--group", "s3"]),
    ];
    for (name, args) in cases {
        let h = example(&dir, name, args);
        let out = run(&["verify", path_str(&h)]);
        assert_eq!(out.code, EXIT_PASS, "{name}: {}", out.stdout);
    }
    let a = std::fs::read_to_string(dir.path().join("du.json")).unwrap();
    let b: Value = serde_json::from_str(&a).unwrap();
    let direct = loop_function_hcq(&LoopTable::moufang12(), Field::Rational).unwrap();
    assert!(parse_hcq("du", &b).unwrap().structure_eq(&direct));
}

#[test]
fn non_ip_loop_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let table = json!({
        "order": 5,
        "identity": 0,
        "mul": [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]],
    });
    let l = write(&dir, "loop.json", &table);
    let out = dir.path().join("out.json");
    let r = run(&["example", "--kind", "loop-function", "--loop", path_str(&l), "-o", path_str(&out)]);
    assert_eq!(r.code, EXIT_INPUT);
    assert!(r.stderr.contains("inverse-property"), "{}", r.stderr);
}

#[test]
fn shifted_generator_isomorphism() {
    let dir = TempDir::new().unwrap();
    let h = example(&dir, "kc2.json", &["--kind", "group-algebra", "--group", "c2"]);
    let src = write(&dir, "src.json", &kc2_ore(["0", "0"]));
    let dst = write(&dir, "dst.json", &kc2_ore(["2", "-2"]));
    let bad = write(&dir, "bad.json", &kc2_ore(["1", "-1"]));
    let iso = write(&dir, "iso.json", &json!({"phi": {"0": [["1", "0"], ["0", "1"]]}, "d": {"0": ["1", "-1"]}}));
    let (hs, is) = (path_str(&h), path_str(&iso));

    let out = run(&["iso", hs, hs, path_str(&src), path_str(&dst), is, "--degree", "3"]);
    assert_eq!(out.code, EXIT_PASS, "{}", out.stdout);
    assert!(out.stdout.contains("iso.ext.mult"));

    let out = run(&["iso", hs, hs, path_str(&src), path_str(&bad), is, "--degree", "3"]);
    assert_eq!(out.code, EXIT_FAIL);
    assert!(out.stdout.contains("iso.delta"));
    assert!(!out.stdout.contains("iso.ext.mult"));

    let out = run(&["--report", "json", "iso", hs, hs, path_str(&src), path_str(&bad), is, "--degree", "3", "--force"]);
    assert_eq!(out.code, EXIT_FAIL);
    let doc = json_report(&out);
    assert!(doc["checks"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["id"] == "iso.ext.mult" && c["verdict"] == "fail" && c["subject"] == "grades (0) at g·y, g"));
}

#[test]
fn normalization_command() {
    let dir = TempDir::new().unwrap();
    let h = example(&dir, "kc2.json", &["--kind", "group-algebra", "--group", "c2"]);
    let gen = write(&dir, "gen.json", &json!({"r1": {"0": ["0", "1"]}, "r2": {"0": ["1", "0"]}}));
    let out = run(&["--report", "json", "normalize", path_str(&h), path_str(&gen)]);
    assert_eq!(out.code, EXIT_PASS, "{}", out.stdout);
    assert_eq!(json_report(&out)["output"]["r"], json!({"0": ["0", "1"]}));

    let gen = write(&dir, "bad.json", &json!({"r1": {"0": ["0", "2"]}, "r2": {"0": ["1", "0"]}}));
    let out = run(&["normalize", path_str(&h), path_str(&gen)]);
    assert_eq!(out.code, EXIT_FAIL);
    assert!(out.stdout.contains("normalize.precondition"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["frobnicate"]).code, EXIT_INPUT);
    assert_eq!(run(&["verify"]).code, EXIT_INPUT);
    assert_eq!(run(&["example", "--kind", "taft", "-o", "/tmp/x.json"]).code, EXIT_INPUT);
    assert_eq!(run(&["example", "--kind", "group-algebra", "--group", "d4", "-o", "/tmp/x.json"]).code, EXIT_INPUT);
    assert_eq!(run(&["example", "--kind", "group-algebra", "--group", "c2", "--field", "p4", "-o", "/tmp/x.json"]).code, EXIT_INPUT);
    assert_eq!(run(&["--help"]).code, EXIT_PASS);
}

#[test]
fn ore_file_shape_errors() {
    let dir = TempDir::new().unwrap();
    let h = example(&dir, "kc2.json", &["--kind", "group-algebra", "--group", "c2"]);
    let mut v = kc2_ore(["0", "0"]);
    v["chi"] = json!(["1"]);
    let ore = write(&dir, "ore.json", &v);
    let out = run(&["ore-check", path_str(&h), path_str(&ore)]);
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stderr.contains("ore.json") && out.stderr.contains("/chi"), "{}", out.stderr);
}
