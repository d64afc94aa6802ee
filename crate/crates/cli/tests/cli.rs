use std::fs;
use std::path::PathBuf;

use assert_cmd::Command;
use predicates::prelude::*;
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn golden(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

fn lf() -> Command {
    let mut c = Command::cargo_bin("loopforge").unwrap();
    c.env_remove("LOOPFORGE_ENVELOPE");
    c
}

fn stdout_of(args: &[&str]) -> (String, i32) {
    let out = lf().args(args).output().unwrap();
    (String::from_utf8(out.stdout).unwrap(), out.status.code().unwrap())
}

#[test]
fn check_prints_property_value() {
    lf().args(["check", "--table"])
        .arg(data("c3.tbl"))
        .args(["--prop", "AIP"])
        .assert()
        .success()
        .stdout("AIP: true\n");
}

#[test]
fn property_names_are_case_insensitive() {
    lf().args(["check", "--inline", "0 1;1 0", "--prop", "cip,flex"])
        .assert()
        .success()
        .stdout("CIP: true\nFLEX: true\n");
}

#[test]
fn assert_flag_controls_exit_one() {
    let args = ["check", "--inline", "0 1 2;1 2 0;2 0 1", "--prop", "EXP2"];
    lf().args(args).assert().code(0);
    lf().args(args).arg("--assert").assert().code(1).stdout(predicate::str::contains("EXP2: false"));
}

#[test]
fn input_errors_exit_two_with_position() {
    lf().args(["check", "--table"])
        .arg(data("out_of_range.tbl"))
        .assert()
        .code(2)
        .stderr(predicate::str::contains("line 3, column 3"));
    lf().args(["check", "--inline", "0 1;1 1"])
        .assert()
        .code(2)
        .stderr(predicate::str::contains("not a Latin square"));
    lf().args(["aut", "--table", "/nonexistent/x.tbl"]).assert().code(2);
}

#[test]
fn usage_errors_exit_two() {
    lf().arg("bogus").assert().code(2);
    lf().args(["check", "--bogus-flag"]).assert().code(2);
    lf().args(["verify", "--inline", "0", "--theorem", "T9.9"]).assert().code(2);
}

#[test]
fn stdin_input() {
    lf().args(["aut", "--table", "-", "--json"])
        .write_stdin("# name: V4\n4\n0 1 2 3\n1 0 3 2\n2 3 0 1\n3 2 1 0\n")
        .assert()
        .success()
        .stdout(predicate::str::contains(r#""order":6"#));
}

#[test]
fn json_mode_prints_one_object_per_loop() {
    let two = "2\n0 1\n1 0\n\n3\n0 1 2\n1 2 0\n2 0 1\n";
    let out = lf().args(["nuclei", "--table", "-", "--json"]).write_stdin(two).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[1]["nuclei"]["center"], "0,1,2");
}

#[test]
fn generate_count_only() {
    lf().args(["generate", "--order", "5", "--up-to-iso", "--count-only"])
        .assert()
        .success()
        .stdout("6\n");
    lf().args(["generate", "--order", "5", "--count-only"]).assert().stdout("56\n");
}

#[test]
fn generate_respects_envelope() {
    lf().args(["generate", "--order", "7", "--count-only"]).assert().code(2);
    lf().args(["generate", "--order", "7", "--count-only"])
        .env("LOOPFORGE_ENVELOPE", "5")
        .assert()
        .code(2)
        .stderr(predicate::str::contains("envelope of 5"));
}

#[test]
fn verify_reports_consistency() {
    let (out, code) = stdout_of(&["verify", "--table", data("c3.tbl").to_str().unwrap(), "--theorem", "T3.3.1", "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["consistent"], true);
    assert_eq!(v["lhs"], false);
    assert_eq!(v["rhs"], false);
    assert_eq!(out, golden("verify_c3_t331.json"));
}

#[test]
fn verify_exits_three_on_inconsistency() {
    // V4 with G = {0,1}: SAUM acts trivially on G, so H_S is abelian but SAUM ≠ {I}
    lf().args(["verify", "--table"])
        .arg(data("v4.tbl"))
        .args(["--theorem", "T3.3.2"])
        .assert()
        .code(3)
        .stdout(predicate::str::contains("T3.3.2 on V4: inconsistent"));
    lf().args(["verify", "--table"])
        .arg(data("v4.tbl"))
        .args(["--theorem", "OSBORN,HUTHNANCE,T3.1"])
        .assert()
        .code(0);
}

#[test]
fn golden_outputs() {
    let s3 = data("s3.tbl");
    let v4 = data("v4.tbl");
    let c3 = data("c3.tbl");
    let cases: [(&[&str], &str, i32); 5] = [
        (&["check", "--table", s3.to_str().unwrap(), "--json"], "check_s3.json", 0),
        (&["smarandache", "--table", v4.to_str().unwrap(), "--json"], "smarandache_v4.json", 0),
        (&["sweep", "--max-order", "4", "--theorems", "all", "--json"], "sweep_4.json", 3),
        (&["generate", "--order", "4"], "generate_4.txt", 0),
        (&["holomorph", "--table", c3.to_str().unwrap()], "holomorph_c3.tbl", 0),
    ];
    for (args, file, want) in cases {
        let (out, code) = stdout_of(args);
        assert_eq!(code, want, "{args:?}");
        assert_eq!(out, golden(file), "{args:?}");
    }
}

#[test]
fn parallelism_does_not_change_bytes() {
    let (seq, _) = stdout_of(&["generate", "--order", "5", "--jobs", "1"]);
    let (par, _) = stdout_of(&["generate", "--order", "5", "--jobs", "4"]);
    assert_eq!(seq, par);
    let (a, _) = stdout_of(&["sweep", "--max-order", "5", "--jobs", "1", "--json"]);
    let (b, _) = stdout_of(&["sweep", "--max-order", "5", "--jobs", "3", "--json"]);
    assert_eq!(a, b);
}

#[test]
fn holomorph_writes_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("h.tbl");
    lf().args(["holomorph", "--table"])
        .arg(data("c3.tbl"))
        .arg("--out")
        .arg(&out)
        .assert()
        .success()
        .stdout("");
    assert_eq!(fs::read_to_string(&out).unwrap(), golden("holomorph_c3.tbl"));
    let car: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("h.tbl.pairs.json")).unwrap()).unwrap();
    assert_eq!(car["order"], 6);
    assert_eq!(car["aum_order"], 2);
    let pairs = car["pairs"].as_array().unwrap();
    assert_eq!(pairs.len(), 6);
    assert_eq!(pairs[4]["automorphism_index"], 1);
    assert_eq!(pairs[4]["base"], 1);
}

#[test]
fn s_holomorph_on_one_subgroup() {
    let (out, code) = stdout_of(&["s-holomorph", "--table", data("s3.tbl").to_str().unwrap(), "--subgroup", "0,3,4", "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let h = &v["s_holomorphs"][0];
    assert_eq!(h["saum_order"], 6);
    assert_eq!(h["order"], 18);
    lf().args(["s-holomorph", "--table"])
        .arg(data("s3.tbl"))
        .args(["--subgroup", "0,1,2"])
        .assert()
        .code(2);
}

#[test]
fn whole_loop_as_s_subgroup_is_opt_in() {
    let args = ["smarandache", "--inline", "0 1 2;1 2 0;2 0 1", "--json"];
    let (proper, _) = stdout_of(&args);
    let v: Value = serde_json::from_str(&proper).unwrap();
    assert_eq!(v["s_subgroups"], Value::Array(vec![]));
    let mut whole = args.to_vec();
    whole.push("--allow-whole");
    let (out, _) = stdout_of(&whole);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["s_subgroups"][0], "0,1,2");
}

#[test]
fn bruck_chirality_flag() {
    for side in ["left", "right"] {
        lf().args(["check", "--inline", "0 1;1 0", "--prop", "BRUCK", "--bruck", side])
            .assert()
            .success()
            .stdout("BRUCK: true\n");
    }
    lf().args(["check", "--inline", "0 1;1 0", "--bruck", "up"]).assert().code(2);
}

#[test]
fn quasigroup_without_identity() {
    // x·y = x - y (mod 3)
    lf().args(["check", "--inline", "0 2 1;1 0 2;2 1 0"])
        .assert()
        .success()
        .stdout(predicate::str::contains("AIP: n/a").and(predicate::str::contains("EXP2: true")));
    lf().args(["check", "--inline", "0 2 1;1 0 2;2 1 0", "--prop", "AIP"]).assert().code(2);
}
