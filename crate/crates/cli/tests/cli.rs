use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn hadarank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hadarank"))
        .args(args)
        .env_remove("HADARANK_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn schema_path() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schema/certificate.schema.json")
}

/// Validates with the Python `jsonschema` package when it is installed.
fn validate(cert: &Path) {
    let script = "import json, sys, jsonschema\n\
                  s = json.load(open(sys.argv[1])); d = json.load(open(sys.argv[2]))\n\
                  jsonschema.validate(d, s)";
    match Command::new("python3").args(["-c", script]).arg(schema_path()).arg(cert).output() {
        Ok(o) if o.status.success() => {}
        Ok(o) if String::from_utf8_lossy(&o.stderr).contains("No module named") => {
            eprintln!("python jsonschema unavailable, schema check skipped");
        }
        Ok(o) => panic!("schema violation: {}", String::from_utf8_lossy(&o.stderr)),
        Err(_) => eprintln!("python3 unavailable, schema check skipped"),
    }
}

#[test]
fn rank_certificate_replays_and_matches_schema() {
    let dir = tempfile::tempdir().unwrap();
    let out = hadarank(&["rank", "--ideal", "zoo:conic-c", "--point", "0:1:-1", "--max-m", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"]["kind"], "RankEquals");
    assert_eq!(v["verdict"]["value"], 3);
    assert_eq!(v["witnesses"].as_array().unwrap().len(), 3);
    let cert = dir.path().join("cert.json");
    std::fs::write(&cert, &out.stdout).unwrap();
    validate(&cert);

    let replay = hadarank(&["rank", "--ideal", "zoo:conic-c", "--point", "0:1:-1", "--verify", cert.to_str().unwrap()]);
    assert_eq!(replay.status.code(), Some(0));
    assert_eq!(json(&replay)["verified"], true);

    let mut forged = v.clone();
    forged["witnesses"][1] = serde_json::json!(["1", "1", "1"]);
    let bad = dir.path().join("forged.json");
    std::fs::write(&bad, forged.to_string()).unwrap();
    let replay = hadarank(&["rank", "--ideal", "zoo:conic-c", "--point", "0:1:-1", "--verify", bad.to_str().unwrap()]);
    assert_eq!(replay.status.code(), Some(1));
    assert_eq!(json(&replay)["verified"], false);
}

#[test]
fn other_verdicts_match_schema() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 4] = [
        &["rank", "--ideal", "zoo:conic-q", "--point", "1:1:0"],
        &["rank", "--ideal", "zoo:conic-q", "--point", "1:1:0", "--no-obstruction", "--max-m", "2"],
        &["border-rank", "--ideal", "zoo:conic-c", "--point", "0:1:-1"],
        &["rank", "--ideal", "zoo:conic-c", "--point", "0:1:-1", "--budget", "5"],
    ];
    let kinds = ["ProvablyInfinite", "RankGreaterThan", "BorderRank", "Unknown"];
    for (args, kind) in cases.iter().zip(kinds) {
        let out = hadarank(args);
        let v = json(&out);
        assert_eq!(v["verdict"]["kind"], kind);
        assert_eq!(out.status.code(), Some(if kind == "Unknown" { 2 } else { 0 }));
        let path = dir.path().join(format!("{kind}.json"));
        std::fs::write(&path, &out.stdout).unwrap();
        validate(&path);
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["decompose", "--ideal", "zoo:conic-c", "--point", "0:1:-1", "--m", "3", "--seed", "11"];
    let a = hadarank(&args);
    let b = hadarank(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["exists"], true);
    let dim = ["dim", "--param", "zoo:random-curve-3-3", "--power", "2", "--seed", "3"];
    assert_eq!(hadarank(&dim).stdout, hadarank(&dim).stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(hadarank(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(hadarank(&["rank", "--ideal", "/nonexistent.ideal", "--point", "1:1:1"]).status.code(), Some(1));
    assert_eq!(hadarank(&["power", "--ideal", "zoo:conic-c", "--m", "3", "--budget", "3"]).status.code(), Some(2));
    assert_eq!(hadarank(&["--help"]).status.code(), Some(0));
}

#[test]
fn files_from_zoo_feed_the_verbs() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert!(hadarank(&["zoo", "emit", "random-curve-3-3", "--dir", d]).status.success());
    let param = dir.path().join("random-curve-3-3.param");
    let v = json(&hadarank(&["dim", "--param", param.to_str().unwrap(), "--power", "2"]));
    assert_eq!(v["m"], 2);
    assert_eq!(v["dim"], 2);
    let v = json(&hadarank(&["check-delta", "--param", param.to_str().unwrap()]));
    assert_eq!(v["avoids"], true);
    assert_eq!(v["resultants"].as_array().unwrap().len(), 6);

    assert!(hadarank(&["zoo", "emit", "conic-q", "--dir", d]).status.success());
    let q = dir.path().join("conic-q.ideal");
    let q = q.to_str().unwrap();
    let v = json(&hadarank(&["product", "--left", q, "--right", q]));
    assert_eq!(v["generators"].as_array().unwrap().len(), 0);
    let v = json(&hadarank(&["strongly-concise", "--ideal", q]));
    assert_eq!(v["failing"], serde_json::json!([0, 1, 2]));
    let names = json(&hadarank(&["zoo", "list"]));
    assert!(names.as_array().unwrap().iter().any(|n| n == "conic-c-sharp"));
}

#[test]
fn power_and_membership() {
    let v = json(&hadarank(&["power", "--ideal", "zoo:binomial-2-2-2", "--m", "2"]));
    assert_eq!(v["generators"], serde_json::json!(["x1^2 - 4*x0*x2"]));
    let v = json(&hadarank(&["member", "--ideal", "zoo:conic-c", "--point", "0:1:-1", "--m", "2"]));
    assert_eq!(v["member"], true);
    let v = json(&hadarank(&["finiteness", "--ideal", "zoo:binomial-2-2-2"]));
    assert!(v.to_string().contains("BinomialFound"));
}

#[test]
fn reproduce_prints_one_line_per_criterion() {
    let out = hadarank(&["reproduce", "--criterion", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1);
    assert!(text.starts_with("[PASS]  6."));
}
