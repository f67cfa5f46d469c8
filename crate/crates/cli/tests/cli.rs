use std::process::{Command, Output};

use serde_json::Value;

fn agc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_agc"))
        .args(args)
        .env_remove("AGC_CAPS")
        .output()
        .expect("agc runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = agc(&all);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn schema() -> jsonschema::Validator {
    let text = include_str!("../schema/report.schema.json");
    jsonschema::validator_for(&serde_json::from_str(text).unwrap()).unwrap()
}

#[test]
fn points_over_gf49() {
    let out = agc(&["points", "--p", "7", "--ext", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("count: 92"));
    assert_eq!(json(&["points", "--p", "7", "--ext", "2"])["count"], 92);
}

#[test]
fn aut_over_gf7() {
    let v = json(&["aut", "--p", "7", "--ext", "1"]);
    assert_eq!(v["order"], 336);
    assert_eq!(v["classification_equals_closure"], true);
}

#[test]
fn orbits_of_p1() {
    let v = json(&["orbits", "--p", "7", "--ext", "2", "--point", "x0=1"]);
    assert_eq!(v["orbit_sizes"], serde_json::json!([8, 84]));
    assert_eq!(v["point_orbit_size"], 8);
    assert_eq!(v["stabilizer_order"], 84);
}

#[test]
fn stab_of_infinity() {
    let v = json(&["stab", "--p", "7", "--point", "inf"]);
    assert_eq!(v["order"], 42);
    assert_eq!(v["abelian"], false);
    assert_eq!(v["center_order"], 2);
}

#[test]
fn code_parameters() {
    let out = agc(&[
        "code",
        "--p",
        "7",
        "--ext",
        "1",
        "--base",
        "inf",
        "--m",
        "5",
        "--E",
        "all-minus-base",
        "--exact-d",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("code: [7,3,5]"));

    let out = agc(&[
        "code",
        "--p",
        "7",
        "--ext",
        "2",
        "--base",
        "x0=1",
        "--m",
        "7",
        "--E",
        "orbit-complement",
    ]);
    assert!(stdout(&out).contains("code: [84,5,>=77]"));

    let v = json(&[
        "code",
        "--p",
        "11",
        "--ext",
        "2",
        "--base",
        "x0=0",
        "--m",
        "12",
        "--E",
        "orbit-complement",
    ]);
    assert_eq!(v["params"]["n"], 220);
    assert_eq!(v["params"]["k"], 8);
}

#[test]
fn rrbasis_dimension() {
    let v = json(&["rrbasis", "--p", "7", "--base", "inf", "--m", "5"]);
    assert_eq!(v["dim"], 3);
    let v = json(&[
        "rrbasis", "--p", "7", "--ext", "2", "--base", "x0=1", "--m", "21",
    ]);
    assert_eq!(v["dim"], 19);
}

#[test]
fn rho_of_example2() {
    let v = json(&["rho", "--p", "7", "--base", "inf", "--m", "5", "--a", "2"]);
    assert_eq!(v["stab_order"], 42);
    assert_eq!(v["image_order"], 21);
    assert_eq!(v["kernel_order"], 2);
    assert_eq!(v["generators"][1]["permutation"], "(2,5,3)(4,6,7)");
    assert_eq!(v["generators"][2]["permutation"], "(1,2,3,4,5,6,7)");
    assert_eq!(v["generators"][3]["permutation"], Value::Null);
}

#[test]
fn verify_example2() {
    let out = agc(&["verify", "--example", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&["verify", "--example", "2"]);
    assert_eq!(v["report"]["correspondence"]["verdict"], "proper_subgroup");
    assert_eq!(v["report"]["correspondence"]["paut_order"], 42);
    let ids: Vec<&str> = v["report"]["correspondence"]["discrepancies"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["id"].as_str().unwrap())
        .collect();
    assert!(ids.contains(&"gamma1_permutation") && ids.contains(&"kernel_order"));
}

#[test]
fn verify_example1() {
    let v = json(&["verify", "--example", "1", "--m", "7"]);
    let c = &v["report"]["correspondence"];
    assert_eq!(c["verdict"], "lower_bound_only");
    assert_eq!(c["image_order"], 84);
    assert_eq!(c["corollary_applies"], true);
    assert_eq!(c["paut_order"], Value::Null);
    let v = json(&["verify", "--example", "1", "--m", "22"]);
    assert_eq!(v["report"]["correspondence"]["corollary_applies"], false);
    assert_eq!(v["report"]["passed"], true);
}

#[test]
fn gv_cases() {
    let v = json(&["gv", "84", "47", "35", "49"]);
    assert_eq!(v["beats_gv"], true);
    assert_eq!(
        v["bound"],
        "344552147465294110719732986332367243247925798357929806000836849"
    );
    let out = agc(&["gv", "7", "3", "5", "7"]);
    assert!(stdout(&out).contains("sum: 4897\nbound: 2401\nbeats_gv: true"));
    assert_eq!(json(&["gv", "4", "4", "1", "2"])["beats_gv"], false);
}

#[test]
fn exit_codes() {
    assert_eq!(agc(&["points", "--p", "5"]).status.code(), Some(2));
    assert_eq!(
        agc(&["code", "--p", "7", "--m", "3", "--E", "explicit"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        agc(&["code", "--p", "7", "--base", "x0=2,3", "--m", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(agc(&["gv", "4", "5", "1", "2"]).status.code(), Some(2));
    assert_eq!(
        agc(&["verify", "--example", "2", "--m", "3"]).status.code(),
        Some(2)
    );
    let out = agc(&[
        "code",
        "--p",
        "7",
        "--ext",
        "2",
        "--base",
        "x0=1",
        "--m",
        "7",
        "--E",
        "orbit-complement",
        "--exact-d",
        "--cap-min-distance",
        "100",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(
        agc(&["aut", "--p", "7", "--cap-closure", "10"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn caps_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_agc"))
        .args(["code", "--p", "7", "--m", "5", "--exact-d"])
        .env("AGC_CAPS", "min_distance=10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_agc"))
        .args(["points"])
        .env("AGC_CAPS", "bogus=1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["verify", "--example", "2", "--format", "json"],
        vec!["aut", "--p", "7", "--ext", "2", "--list"],
        vec![
            "code",
            "--p",
            "7",
            "--ext",
            "2",
            "--base",
            "x0=1",
            "--m",
            "9",
            "--E",
            "orbit-complement",
        ],
    ] {
        assert_eq!(agc(&args).stdout, agc(&args).stdout, "{args:?}");
    }
}

#[test]
fn matrix_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.txt");
    let p = path.to_str().unwrap();
    let out = agc(&["code", "--p", "7", "--m", "5", "--output", p]);
    assert!(out.status.success());
    let body = std::fs::read_to_string(&path).unwrap();
    assert_eq!(body.lines().next(), Some("7 7 3"));
    let v = json(&["paut", "--matrix", p]);
    assert_eq!(v["order"], 42);
    assert_eq!(v["center_order"], 1);

    let jpath = dir.path().join("c.json");
    let out = agc(&[
        "code",
        "--p",
        "7",
        "--ext",
        "2",
        "--base",
        "x0=1",
        "--m",
        "7",
        "--E",
        "orbit-complement",
        "--output",
        jpath.to_str().unwrap(),
        "--matrix-format",
        "json",
    ]);
    assert!(out.status.success());
    let m: Value = serde_json::from_str(&std::fs::read_to_string(&jpath).unwrap()).unwrap();
    assert_eq!(
        (m["q"].as_u64(), m["n"].as_u64(), m["k"].as_u64()),
        (Some(49), Some(84), Some(5))
    );
}

#[test]
fn explicit_evaluation_set() {
    let v = json(&[
        "code",
        "--p",
        "7",
        "--m",
        "2",
        "--E",
        "explicit",
        "--points",
        "0,0;1,0;2,0",
        "--exact-d",
    ]);
    assert_eq!(v["params"]["n"], 3);
    assert_eq!(v["params"]["k"], 2);
    assert_eq!(v["params"]["d_exact"], 2);
}

#[test]
fn json_outputs_match_schema() {
    let validator = schema();
    let runs: Vec<Vec<&str>> = vec![
        vec!["points", "--p", "7"],
        vec!["aut", "--p", "7", "--list"],
        vec!["orbits", "--p", "7", "--ext", "2", "--point", "x0=1"],
        vec!["stab", "--p", "7", "--point", "inf", "--list"],
        vec![
            "rrbasis", "--p", "7", "--ext", "2", "--base", "x0=1", "--m", "7",
        ],
        vec!["code", "--p", "7", "--m", "5", "--exact-d"],
        vec!["paut", "--p", "7", "--m", "5", "--list"],
        vec!["rho", "--p", "7", "--m", "5", "--a", "2", "--list"],
        vec!["verify", "--example", "2"],
        vec!["verify", "--example", "1", "--m", "14"],
        vec!["gv", "84", "47", "35", "49"],
    ];
    for args in runs {
        let v = json(&args);
        let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
    }
    let mut bad = json(&["gv", "7", "3", "5", "7"]);
    bad["sum"] = Value::from(4897);
    assert!(!validator.is_valid(&bad));
}
