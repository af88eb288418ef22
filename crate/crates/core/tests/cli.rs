//! End-to-end checks of the command-line interface, driving the built
//! binary through its documented subcommands.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_vermadiff"))
}

#[test]
fn roots_a1_has_one_positive_root() {
    let out = bin()
        .args(["roots", "--type", "A", "--rank", "1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["m"], 1);
    assert_eq!(doc["positive_roots"].as_array().unwrap().len(), 1);
}

#[test]
fn singular_c2_example_vector() {
    // shifted coordinates (-1, 1): plain (-2, 0); the u1 = 0 term kills the
    // C_{4,1} monomial, leaving C_{2,1} C_{4,2} v.
    let out = bin()
        .args([
            "singular",
            "--type",
            "C",
            "--rank",
            "2",
            "--lambda",
            "-2,0",
            "--root",
            "e1+e2",
            "--sp-order",
            "--format",
            "json",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["branch"], "polynomial");
    let vec = doc["vector"].as_array().unwrap();
    assert_eq!(vec.len(), 1);
    assert_eq!(vec[0]["coeff"], "1");
    assert_eq!(vec[0]["exponents"], serde_json::json!([1, 0, 0, 1]));
}

#[test]
fn rank_check_f4_layer3() {
    let out = bin()
        .args(["rank-check", "--type", "F", "--rank", "4", "--layer", "3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["full"], true);
    assert_eq!(doc["central_det_odd"], true);
}

#[test]
fn linkage_exit_codes() {
    let ok = bin()
        .args([
            "linkage", "--type", "A", "--rank", "1", "--lambda", "2", "--mu", "-4",
        ])
        .output()
        .unwrap();
    assert!(ok.status.success());
    let not = bin()
        .args([
            "linkage", "--type", "A", "--rank", "1", "--lambda", "-3", "--mu", "-4",
        ])
        .output()
        .unwrap();
    assert_eq!(not.status.code(), Some(1));
}

#[test]
fn oracle_check_dimension() {
    // s1 s2 . 0 = (-3, 0) carries a singular vector; 0 - theta = (-1, -1)
    // is off the dot orbit and carries none.
    let out = bin()
        .args([
            "oracle-check",
            "--type",
            "A",
            "--rank",
            "2",
            "--lambda",
            "0,0",
            "--mu",
            "-3,0",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("kernel dimension: 1"), "{text}");
    let out = bin()
        .args([
            "oracle-check",
            "--type",
            "A",
            "--rank",
            "2",
            "--lambda",
            "0,0",
            "--mu",
            "-1,-1",
        ])
        .output()
        .unwrap();
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("kernel dimension: 0"), "{text}");
}

#[test]
fn usage_errors_exit_2() {
    let out = bin()
        .args(["roots", "--type", "Z", "--rank", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["unknown-subcommand"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin()
        .args(["roots", "--type", "E", "--rank", "5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn deterministic_outputs() {
    let run = || {
        bin()
            .args([
                "singular",
                "--type",
                "B",
                "--rank",
                "2",
                "--lambda",
                "1,1/2",
                "--weyl-word",
                "1,2",
                "--format",
                "json",
            ])
            .output()
            .unwrap()
    };
    let a = run();
    let b = run();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn weyl_orbit_word_and_hasse_export() {
    let out = bin()
        .args([
            "weyl-orbit",
            "--type",
            "A",
            "--rank",
            "2",
            "--lambda",
            "1/3,-2/5",
            "--word",
            "1,2",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    // full orbit at rank 2: six lines, one per Weyl element
    let out = bin()
        .args([
            "weyl-orbit",
            "--type",
            "A",
            "--rank",
            "2",
            "--lambda",
            "1/3,-2/5",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 6);
    // full orbit is refused above rank 3
    let out = bin()
        .args([
            "weyl-orbit",
            "--type",
            "A",
            "--rank",
            "4",
            "--lambda",
            "1,1,1,1",
        ])
        .output()
        .unwrap();
    assert!(!out.status.success());
    let dir = std::env::temp_dir().join("vermadiff_test_hasse.dot");
    let path = dir.to_str().unwrap();
    let out = bin()
        .args(["rank-check", "--type", "D", "--rank", "5", "--dot", path])
        .output()
        .unwrap();
    assert!(out.status.success());
    let dot = std::fs::read_to_string(path).unwrap();
    assert_eq!(dot.matches("label=").count(), 20);
    std::fs::remove_file(path).ok();
}
