use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bogograph"))
        .args(args)
        .output()
        .unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = run(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn path(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

#[test]
fn invariants_of_small_graphs() {
    let theta = json(&["invariants", &path("theta.json")]);
    assert_eq!(theta["phi"], "1/9");
    assert_eq!(theta["lower_bound"]["value"], "1/9");
    assert_eq!(theta["measure"]["edges"]["e1"], "1/3");

    let point = json(&["invariants", &path("point.json")]);
    for key in ["epsilon", "tau", "phi"] {
        assert_eq!(point[key], "0", "{key}");
    }

    let circle = json(&["invariants", &path("circle-q1.json")]);
    assert_eq!(circle["phi"], "5/12");
    assert_eq!(circle["measure"]["points"]["p"], "1/2");
}

#[test]
fn symbolic_lengths_give_quotients() {
    let theta = json(&["invariants", &path("theta-symbolic.json")]);
    assert_eq!(theta["eta"], "l1*l2 + l1*l3 + l2*l3");
    assert_eq!(theta["r_KK"]["numerator"], "2*l1*l2*l3");
    assert!(theta["lower_bound"].is_null());
    assert!(theta["measure"].is_null());
}

#[test]
fn text_report() {
    let out = run(&["invariants", &path("theta.json")]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("phi: 1/9\n"), "{text}");
    assert!(text.contains("type lengths: type 0: 3, type 1: 0"), "{text}");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["invariants", &path("malformed.json")]).status.code(), Some(2));
    assert_eq!(run(&["invariants", &path("missing.json")]).status.code(), Some(2));
    assert_eq!(run(&["certify", &path("dumbbell.json")]).status.code(), Some(1));
    assert_eq!(
        run(&["certify", &path("dumbbell.json"), "--allow-any"]).status.code(),
        Some(0)
    );
    assert_eq!(
        run(&["curve-bound", "--genus", "2", "--degree", "1", "--delta", "2=1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["curve-bound", "--genus", "6", "--degree", "1", "--delta", "0=1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(run(&["catalog", "--genus", "6"]).status.code(), Some(1));
    assert_eq!(
        run(&["selfcheck", "--graphs", "5", "--corrupt-omega1"]).status.code(),
        Some(4)
    );
}

#[test]
fn certify_single_graph() {
    let cert = json(&["certify", &path("theta-symbolic.json")]);
    assert_eq!(cert["A_min"], "5/12");
    assert_eq!(cert["c"], "1/27");
    assert_eq!(cert["feasible"], true);
    assert_eq!(cert["semantics"], "coefficientwise");
}

#[test]
fn certify_catalog_with_conjecture() {
    let report = json(&["certify", "--genus", "3", "--all", "--check-conjecture"]);
    let certs = report["certificates"].as_array().unwrap();
    assert_eq!(certs.len(), 2);
    for c in certs {
        assert_eq!(c["A_min"], "7/18");
        assert_eq!(c["conjecture_ok"], true);
    }
    assert_eq!(report["c"], "2/81");

    let out = run(&["certify", "--genus", "2", "--all"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("5/12") && text.contains("c(2) = 1/27"), "{text}");
}

#[test]
fn catalog_emits_parseable_graphs() {
    let dir = tempfile::tempdir().unwrap();
    let out = json(&[
        "catalog",
        "--genus",
        "3",
        "--emit-graphs",
        dir.path().to_str().unwrap(),
        "--certify",
    ]);
    assert_eq!(out["count"], 2);
    for label in ["g3-1", "g3-2"] {
        let file = dir.path().join(format!("{label}.json"));
        let cert = json(&["certify", file.to_str().unwrap()]);
        assert_eq!(cert["A_min"], "7/18");
    }
}

#[test]
fn curve_bounds() {
    let cases: [(&[&str], &str); 4] = [
        (&["--genus", "2", "--degree", "1", "--smooth"], "3"),
        (&["--genus", "4", "--degree", "1", "--delta", "0=0,1=0,2=1"], "1/9"),
        (&["--genus", "3", "--degree", "2", "--delta", "0=1"], "1/1134"),
        (&["--genus", "2", "--degree", "1", "--delta", "0=1"], "1/270"),
    ];
    for (args, expected) in cases {
        let mut all = vec!["curve-bound"];
        all.extend_from_slice(args);
        assert_eq!(json(&all)["value"], expected, "{args:?}");
    }
    let conj = json(&[
        "curve-bound",
        "--genus",
        "6",
        "--degree",
        "1",
        "--delta",
        "0=1",
        "--allow-conjectural",
    ]);
    assert_eq!(conj["conjectural"], true);
}

#[test]
fn selfcheck_is_deterministic() {
    let a = json(&["selfcheck", "--seed", "11", "--graphs", "6"]);
    let b = json(&["selfcheck", "--seed", "11", "--graphs", "6", "--sequential"]);
    assert_eq!(a, b);
    assert_eq!(a["seed"], 11);
    assert_eq!(a["passed"], true);
}

#[test]
fn thread_cap_is_validated() {
    let out = Command::new(env!("CARGO_BIN_EXE_bogograph"))
        .args(["curve-bound", "--genus", "2", "--degree", "1", "--smooth"])
        .env("BOGOGRAPH_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let ok = Command::new(env!("CARGO_BIN_EXE_bogograph"))
        .args(["certify", "--genus", "2", "--all"])
        .env("BOGOGRAPH_THREADS", "2")
        .output()
        .unwrap();
    assert!(ok.status.success());
}
