use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).expect("stdout is JSON")
    }

    fn error(&self) -> Value {
        serde_json::from_str(&self.stderr).expect("stderr is JSON")
    }
}

fn majorkit(args: &[&str], stdin: Option<&str>) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_majorkit"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.unwrap_or("").as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn file(name: &str, body: &str) -> String {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

const PHI: &str = r#"{"n":2,"m":2,"blocks":[[[[2,1],[0,1]],[[-1,-1],[0,0]]],[[[0,0],[1,1]],[[1,0],[-1,0]]]]}"#;

#[test]
fn check_strong_exit_codes() {
    let a = file("strong_a.json", "[[1,0],[0,0]]");
    let b = file("strong_b.json", "[[0,0],[1,0]]");
    let holds = majorkit(&["check", "--kind", "strong", "-A", &a, "-B", &b], None);
    assert_eq!(holds.code, 0);
    let out = holds.json();
    assert_eq!(out["schema"], "majorkit/1");
    assert_eq!(out["result"], "holds");

    let pa = file("strong_pa.json", "[[2,0],[0,1]]");
    let pb = file("strong_pb.json", "[[1,0],[1,1]]");
    let fails = majorkit(&["check", "--kind", "strong", "-A", &pb, "-B", &pa], None);
    assert_eq!(fails.code, 1);
    assert_eq!(fails.json()["result"], "fails");
}

#[test]
fn check_vector_weak_directional_equiv() {
    let a = file("vec_a.json", r#"["1/2","1/2"]"#);
    let b = file("vec_b.json", "[1,0]");
    assert_eq!(
        majorkit(&["check", "--kind", "vector", "-A", &a, "-B", &b], None).code,
        0
    );
    assert_eq!(
        majorkit(&["check", "--kind", "vector", "-A", &b, "-B", &a], None).code,
        1
    );

    let ma = file("weak_a.json", "[[1,1],[1,1]]");
    let mb = file("weak_b.json", "[[1,1],[2,0]]");
    let far = file("weak_far.json", "[[3,3],[1,1]]");
    assert_eq!(
        majorkit(&["check", "--kind", "weak", "-A", &far, "-B", &mb], None).code,
        1
    );
    assert_eq!(
        majorkit(&["check", "--kind", "weak", "-A", &ma, "-B", &mb], None).code,
        0
    );
    assert_eq!(
        majorkit(&["check", "--kind", "directional", "-A", &ma, "-B", &mb], None).code,
        1
    );
    assert_eq!(
        majorkit(&["check", "--kind", "equiv", "-A", &ma, "-B", &mb], None).code,
        1
    );
    let swapped = file("equiv_b.json", "[[2,0],[1,1]]");
    let r = majorkit(&["check", "--kind", "equiv", "-A", &mb, "-B", &swapped], None);
    assert_eq!(r.code, 0);
}

#[test]
fn witness_for_vectors_and_matrices() {
    let a = file("wit_a.json", "[2,1,1]");
    let b = file("wit_b.json", "[3,1,0]");
    let r = majorkit(&["witness", "--kind", "vector", "-A", &a, "-B", &b], None);
    assert_eq!(r.code, 0);
    assert!(r.json()["chain"].as_array().unwrap().len() <= 2);
    assert_eq!(
        majorkit(&["witness", "--kind", "vector", "-A", &b, "-B", &a], None).code,
        1
    );

    let r = majorkit(
        &[
            "witness",
            "--kind",
            "strong",
            "-A",
            "-",
            "-B",
            &file("wit_mb.json", "[[1],[0]]"),
        ],
        Some("[[\"1/2\"],[\"1/2\"]]"),
    );
    assert_eq!(r.code, 0);
    assert_eq!(
        r.json()["witness"]["data"],
        serde_json::json!([["1/2", "1/2"], ["1/2", "1/2"]])
    );
}

#[test]
fn reduce_reproduces_worked_example() {
    let a = file("red_a.json", "[[-1,-2,4,-6],[1,-4,2,-6]]");
    let b = file("red_b.csv", "3,-6,0,-6\n-3,0,6,-6\n");
    let r = majorkit(
        &[
            "reduce", "--method", "shift", "--lambda", "6", "--mu", "20", "-A", &a, "-B", &b,
        ],
        None,
    );
    assert_eq!(r.code, 0);
    let out = r.json();
    assert_eq!(
        out["A"]["data"],
        serde_json::json!([["9/20", "11/20", "11/20", "1/2"], ["11/20", "9/20", "9/20", "1/2"]])
    );
    assert_eq!(
        out["B"]["data"],
        serde_json::json!([["13/20", "7/20", "7/20", "1/2"], ["7/20", "13/20", "13/20", "1/2"]])
    );

    let r = majorkit(
        &[
            "reduce", "--method", "diag", "--lambda", "7", "-A", &a, "-B", &b, "--format", "csv",
        ],
        None,
    );
    assert_eq!(r.code, 0);
    assert_eq!(
        r.stdout,
        "3/7,5/8,11/20,1/2\n4/7,3/8,9/20,1/2\n\n5/7,1/8,7/20,1/2\n2/7,7/8,13/20,1/2\n"
    );

    let bad = majorkit(&["reduce", "--method", "shift", "--mu", "1", "-A", &a, "-B", &b], None);
    assert_eq!(bad.code, 2);
    assert_eq!(bad.error()["error"]["kind"], "precondition");
}

#[test]
fn theta_and_zero_sum_column() {
    let r = majorkit(&["theta", "-A", "-"], Some("[[1,0],[1,0],[0,0]]"));
    assert_eq!(r.code, 0);
    assert_eq!(
        r.json()["theta"]["data"],
        serde_json::json!([["1/2", "1/3"], ["1/2", "1/3"], ["0", "1/3"]])
    );
    let r = majorkit(&["theta", "-A", "-"], Some("[[1],[-1]]"));
    assert_eq!(r.code, 2);
    assert_eq!(r.error()["error"]["kind"], "zero-sum-column");
}

#[test]
fn birkhoff_identity_has_one_term() {
    let d = file("id.json", "[[1,0,0],[0,1,0],[0,0,1]]");
    let r = majorkit(&["birkhoff", "-D", &d], None);
    assert_eq!(r.code, 0);
    let out = r.json();
    assert_eq!(out["terms"].as_array().unwrap().len(), 1);
    assert_eq!(out["terms"][0]["weight"], "1");
    let not_ds = majorkit(&["birkhoff", "-D", "-"], Some("[[1,1],[0,0]]"));
    assert_eq!(not_ds.code, 2);
}

#[test]
fn gen_is_deterministic() {
    let first = majorkit(&["gen", "--kind", "ds", "-n", "4", "-k", "3", "--seed", "9"], None);
    let again = majorkit(&["gen", "--kind", "ds", "-n", "4", "-k", "3", "--seed", "9"], None);
    assert_eq!(first.code, 0);
    assert_eq!(first.stdout, again.stdout);
    for kind in ["cs", "zerosum", "dist"] {
        assert_eq!(majorkit(&["gen", "--kind", kind, "-n", "3", "-m", "2"], None).code, 0);
    }
}

#[test]
fn classify_exit_codes() {
    let op = file("phi.json", PHI);
    let cs = majorkit(&["classify", "--target", "cs", "--op", &op], None);
    assert_eq!(cs.code, 0);
    assert_eq!(cs.json()["form"], "cs");
    assert_eq!(majorkit(&["classify", "--target", "strong", "--op", &op], None).code, 1);

    let ando = file("ando.json", r#"{"vecop":[[3,1,1],[1,1,3],[1,3,1]]}"#);
    let r = majorkit(&["classify", "--target", "vector", "--op", &ando], None);
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["form"], "ando2");

    let block = file("block.json", r#"{"vecop":[[2,1],[0,1]]}"#);
    assert_eq!(
        majorkit(&["classify", "--target", "prob", "--op", &block], None).code,
        1
    );
    assert_eq!(
        majorkit(&["classify", "--target", "zerosum", "--op", &block], None).code,
        0
    );
    let uneven = file("uneven.json", r#"{"vecop":[[1,0],[0,2]]}"#);
    assert_eq!(
        majorkit(&["classify", "--target", "zerosum", "--op", &uneven], None).code,
        1
    );
}

#[test]
fn fuzz_exit_codes() {
    let op = file("fuzz_phi.json", PHI);
    let none = majorkit(
        &[
            "fuzz",
            "--op",
            &op,
            "--relation",
            "strong",
            "--domain",
            "cs",
            "--trials",
            "50",
        ],
        None,
    );
    assert_eq!(none.code, 0);
    assert!(none.json()["counterexample"].is_null());
    let found = majorkit(&["fuzz", "--op", &op, "--relation", "strong", "--trials", "50"], None);
    assert_eq!(found.code, 1);
    let cx = &found.json()["counterexample"];
    assert_eq!(cx["A"]["data"], serde_json::json!([["1", "0"], ["0", "0"]]));
    assert_eq!(cx["B"]["data"], serde_json::json!([["0", "0"], ["1", "0"]]));
}

#[test]
fn suite_passes_small_run() {
    let r = majorkit(
        &["suite", "--max-n", "3", "--max-m", "2", "--cases", "10", "--seed", "4"],
        None,
    );
    assert_eq!(r.code, 0);
    let props = r.json()["properties"].as_array().unwrap().len();
    assert!(props >= 10);
}

#[test]
fn input_errors_exit_two() {
    let decimal = majorkit(&["theta", "-A", "-"], Some("[[0.5],[0.5]]"));
    assert_eq!(decimal.code, 2);
    let err = decimal.error();
    assert_eq!(err["schema"], "majorkit/1");
    assert_eq!(err["error"]["kind"], "malformed-rational");
    assert!(err["error"]["message"].as_str().unwrap().contains("p/q"));

    let a = file("shape_a.json", "[[1,0]]");
    let b = file("shape_b.json", "[[1],[0]]");
    let shape = majorkit(&["check", "--kind", "strong", "-A", &a, "-B", &b], None);
    assert_eq!(shape.code, 2);
    assert_eq!(shape.error()["error"]["kind"], "shape-mismatch");

    let unknown = majorkit(&["frobnicate"], None);
    assert_eq!(unknown.code, 2);
    assert_eq!(unknown.error()["error"]["kind"], "usage");

    let missing = majorkit(&["theta", "-A", "/nonexistent/input.json"], None);
    assert_eq!(missing.code, 2);

    let twice = majorkit(&["check", "--kind", "strong", "-A", "-", "-B", "-"], Some("[[1]]"));
    assert_eq!(twice.code, 2);
}

#[test]
fn help_exits_zero() {
    let r = majorkit(&["--help"], None);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("check"));
}
