use std::process::{Command, Output};

fn torslab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torslab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn counts_match_known_values() {
    for (algebra, kind, want) in [
        ("linA:3", "tors", "14"),
        ("linA:2", "mbrick-cc", "5"),
        ("linA:2", "sbrick", "5"),
        ("linA:2", "mbrick", "6"),
        ("linA:2", "bricks", "3"),
        ("linA:4", "wide", "42"),
        ("nakayama:cyclic:3,3", "bricks", "4"),
    ] {
        let o = torslab(&["enumerate", "--algebra", algebra, "--kind", kind, "--format", "count"]);
        assert!(o.status.success(), "{algebra} {kind}");
        assert_eq!(stdout(&o).trim(), want, "{algebra} {kind}");
    }
}

#[test]
fn count_equals_json_length() {
    for kind in ["tors", "torf", "wide", "sbrick", "mbrick", "mbrick-cc", "bricks"] {
        let json = torslab(&["enumerate", "--algebra", "nakayama:linear:2,2,1", "--kind", kind]);
        let list: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
        let count = torslab(&["enumerate", "--algebra", "nakayama:linear:2,2,1", "--kind", kind, "--format", "count"]);
        assert_eq!(list.as_array().unwrap().len().to_string(), stdout(&count).trim(), "{kind}");
    }
}

#[test]
fn semibrick_json_is_sorted_and_tagged() {
    let o = torslab(&["enumerate", "--algebra", "linA:2", "--kind", "sbrick", "--format", "json"]);
    let sets: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let sets = sets.as_array().unwrap();
    assert_eq!(sets.len(), 5);
    assert!(sets.iter().all(|s| s["kind"] == "semibrick"));
    let sizes: Vec<usize> = sets.iter().map(|s| s["members"].as_array().unwrap().len()).collect();
    assert_eq!(sizes, [0, 1, 1, 1, 2]);
}

#[test]
fn output_is_byte_stable() {
    let args = ["enumerate", "--algebra", "linA:3", "--kind", "wide"];
    assert_eq!(torslab(&args).stdout, torslab(&args).stdout);
    let args = ["export", "--algebra", "linA:3", "--labels", "brick"];
    assert_eq!(torslab(&args).stdout, torslab(&args).stdout);
}

#[test]
fn verify_exit_codes() {
    let o = torslab(&["verify", "--algebra", "linA:2", "--suite", "T1,T2,C3"]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["algebra"], "linA:2");
    let ids: Vec<&str> = report["checks"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["T1", "T2", "C3"]);

    let o = torslab(&["verify", "--algebra", "linA:4", "--suite", "all"]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let t2 = report["checks"].as_array().unwrap().iter().find(|c| c["id"] == "T2").unwrap();
    assert_eq!(t2["counts"]["tors"], 42);

    let o = torslab(&["--seed", "7", "verify", "--algebra", "nakayama:cyclic:3,3"]);
    assert_eq!(o.status.code(), Some(0));

    assert_eq!(torslab(&["verify", "--algebra", "linA:2", "--suite", "T99"]).status.code(), Some(2));
}

#[test]
fn usage_and_cap_errors() {
    assert_eq!(torslab(&["enumerate", "--algebra", "linA:0", "--kind", "tors"]).status.code(), Some(2));
    assert_eq!(torslab(&["enumerate", "--algebra", "linA:2", "--kind", "nope"]).status.code(), Some(2));
    assert_eq!(torslab(&["--field", "4", "enumerate", "--algebra", "linA:2", "--kind", "tors"]).status.code(), Some(2));
    let o = torslab(&["--max-indecs", "5", "enumerate", "--algebra", "linA:3", "--kind", "wide"]);
    assert_eq!(o.status.code(), Some(3));
    // Torsion classes fall back to closure generation above the cap.
    let o = torslab(&["--max-indecs", "5", "enumerate", "--algebra", "linA:3", "--kind", "tors", "--format", "count"]);
    assert_eq!(stdout(&o).trim(), "14");
}

#[test]
fn export_writes_dot_files() {
    let dir = tempfile::tempdir().unwrap();
    let edges = |s: &str| s.lines().filter(|l| l.contains("->")).count();
    let nodes = |s: &str| s.lines().filter(|l| l.contains("[label=") && !l.contains("->")).count();

    let hasse = dir.path().join("hasse.dot");
    let o = torslab(&[
        "export", "--algebra", "linA:2", "--what", "hasse", "--labels", "mu",
        "--out", hasse.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let dot = std::fs::read_to_string(&hasse).unwrap();
    assert!(dot.starts_with("digraph"));
    assert_eq!((nodes(&dot), edges(&dot)), (5, 5));
    assert!(!dot.contains("label=\"?\""));

    let kappa = dir.path().join("kappa.dot");
    let o = torslab(&["export", "--algebra", "linA:2", "--what", "kappa-poset", "--out", kappa.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(nodes(&std::fs::read_to_string(&kappa).unwrap()), 5);

    let o = torslab(&["export", "--algebra", "linA:1"]);
    let dot = stdout(&o);
    assert_eq!((nodes(&dot), edges(&dot)), (2, 1));

    let o = torslab(&["export", "--algebra", "linA:2", "--labels", "brick"]);
    assert!(stdout(&o).contains("label=\"M(2,1)\""));

    let bad = dir.path().join("missing").join("x.dot");
    let o = torslab(&["export", "--algebra", "linA:2", "--out", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
}
