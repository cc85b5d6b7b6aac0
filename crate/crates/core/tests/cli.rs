use std::process::{Command, Output};

use serde_json::Value;

fn hopfdouble(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopfdouble")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn without_timestamp(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timestamp").expect("timestamp header");
    v
}

#[test]
fn verify_exit_codes() {
    let out = hopfdouble(&["verify", "taft:3:1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["passed"], true);
    assert_eq!(r["payload"]["dimension"], 9);

    assert_eq!(hopfdouble(&["verify", "--algebra", "uq:3:1"]).status.code(), Some(0));

    let out = hopfdouble(&["verify", "taft:4:2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("primitive"));
    assert!(out.stdout.is_empty());

    assert_eq!(hopfdouble(&["verify", "nonsense:1"]).status.code(), Some(2));
    assert_eq!(hopfdouble(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn reports_are_reproducible() {
    for args in [
        &["classify", "--algebra", "t421:1"][..],
        &["extend", "--algebra", "taft:3:1", "--seed", "4"][..],
        &["pairing", "--right", "taft:3:1"][..],
    ] {
        let a = without_timestamp(report(&hopfdouble(args)));
        let b = without_timestamp(report(&hopfdouble(args)));
        assert_eq!(a, b, "{args:?}");
        assert_eq!(a["command"], serde_json::json!(args));
    }
}

#[test]
fn table1_counts() {
    let out = hopfdouble(&["table1", "--check-paper"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    let rows = r["payload"]["rows"].as_array().unwrap();
    let counts: Vec<(String, u64)> =
        rows.iter().map(|row| (row["label"].as_str().unwrap().to_string(), row["extensions"].as_u64().unwrap())).collect();
    let expected = [
        ("T_3", 1),
        ("T_5", 1),
        ("T_2(-1)", 1),
        ("H_12(ζ,4,2)", 2),
        ("H_4(i,2,1)", 1),
        ("T(4,2,1)", 0),
        ("u_q(sl2), n=3", 2),
    ];
    assert_eq!(counts, expected.iter().map(|(l, c)| (l.to_string(), *c)).collect::<Vec<_>>());
    assert!(rows.iter().all(|row| row["paper_match"] == true && row["matches"] == true));

    let pretty = hopfdouble(&["table1", "--pretty"]);
    let text = String::from_utf8_lossy(&pretty.stdout);
    assert!(text.lines().next().unwrap().contains("extensions"));
    assert_eq!(text.lines().count(), 8);
}

#[test]
fn extend_with_gamma() {
    let out = hopfdouble(&["extend", "--algebra", "t421:1", "--gamma", "1 + z"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["payload"]["extensions"]["families"].as_array().unwrap().len(), 0);
    assert!(!r["payload"]["extensions"]["certificates"].as_array().unwrap().is_empty());

    // γ = 1 violates γ² = 2ζ
    assert_eq!(hopfdouble(&["extend", "--algebra", "t421:1", "--gamma", "1"]).status.code(), Some(2));
    assert_eq!(hopfdouble(&["extend", "--algebra", "t421:1", "--gamma", "1/0"]).status.code(), Some(2));

    let r = report(&hopfdouble(&["extend", "--algebra", "uq:3:1", "--gamma", "1"]));
    assert_eq!(r["payload"]["extensions"]["families"].as_array().unwrap().len(), 2);
}

#[test]
fn export_import_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t421double.json");
    let p = path.to_str().unwrap();
    let out = hopfdouble(&["export", "--algebra", "t421:1", "--double", "--out", p]);
    assert_eq!(out.status.code(), Some(0));
    let out = hopfdouble(&["import", p]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(report(&out)["payload"]["dimension"], 64);

    let again = dir.path().join("again.json");
    let exported = hopfdouble(&["export", "--algebra", "taft:3:1"]).stdout;
    std::fs::write(&again, &exported).unwrap();
    assert_eq!(hopfdouble(&["import", again.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(hopfdouble(&["export", "--algebra", "taft:3:1"]).stdout, exported);
}

#[test]
fn malformed_import_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let text = String::from_utf8(hopfdouble(&["export", "--algebra", "taft:2:1", "--pretty"]).stdout).unwrap();
    std::fs::write(&path, text.replacen("\"1\"", "\"1/0\"", 1)).unwrap();
    let out = hopfdouble(&["import", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("field ") && err.contains("coeff") && err.contains("line "), "{err}");

    let out = hopfdouble(&["import", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn double_command() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.json");
    let out = hopfdouble(&[
        "double",
        "--algebra",
        "taft:3:1",
        "--check-paper",
        "--check-axioms",
        "--emit-presentation",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["payload"]["dimension"], 81);
    assert_eq!(r["payload"]["paper"]["dimensions"], serde_json::json!([81, 81]));
    assert!(path.exists());
}

#[test]
fn thread_cap() {
    let out = Command::new(env!("CARGO_BIN_EXE_hopfdouble"))
        .args(["verify", "taft:2:1"])
        .env("HOPFDOUBLE_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = Command::new(env!("CARGO_BIN_EXE_hopfdouble"))
        .args(["verify", "taft:2:1"])
        .env("HOPFDOUBLE_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
