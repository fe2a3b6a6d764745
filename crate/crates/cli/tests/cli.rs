use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run_file(args: &[&str], file: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_translative"))
        .args(args)
        .arg("--input")
        .arg(data(file))
        .env_remove("TRANSLATIVE_SEED")
        .output()
        .expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_translative"))
        .args(args)
        .env_remove("TRANSLATIVE_SEED")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stderr));
    })
}

#[test]
fn eval_golden() {
    let out = run_file(&["eval"], "box.json");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "{\n  \"method\": \"closed_form\",\n  \"values\": [\n    3.0,\n    3.0,\n    2.0,\n    3.0\n  ]\n}\n"
    );
}

#[test]
fn eval_active_halfspace_and_empty_queries() {
    let out = run_file(&["eval"], "halfspace_active.json");
    assert_eq!(stdout_json(&out)["values"], json!(["-inf", "inf"]));
    let out = run_stdin(&["eval"], r#"{"set":{"kind":"box","b":[0,0]},"k":[1,1],"queries":[]}"#);
    assert_eq!(stdout_json(&out)["values"], json!([]));
}

#[test]
fn eval_oracle_and_epigraph_methods() {
    let v = stdout_json(&run_file(&["eval"], "half_open_box.json"));
    assert_eq!(v["method"], "bisection");
    let values = v["values"].as_array().unwrap();
    assert!((values[0].as_f64().unwrap() + 1.0).abs() <= 1e-9);
    assert_eq!(values[1], "inf");

    let v = stdout_json(&run_file(&["eval"], "max_affine.json"));
    assert_eq!(v["method"], "epigraph_identity");
    assert_eq!(v["values"], json!([2.0, -2.0]));
}

#[test]
fn forced_bisection_matches_closed_form() {
    let input = r#"{"set":{"kind":"box","b":[0,0]},"k":[1,1],"queries":[[2,3]],"options":{"method":"bisection"}}"#;
    let v = stdout_json(&run_stdin(&["eval"], input));
    assert_eq!(v["method"], "bisection");
    assert!((v["values"][0].as_f64().unwrap() - 3.0).abs() <= 1e-9);
}

#[test]
fn domain_of_the_half_open_box() {
    let v = stdout_json(&run_file(&["domain"], "half_open_box.json"));
    assert_eq!(v["in_domain"], json!([true, false, true, false]));
    let none_active = r#"{"set":{"kind":"box","b":[0,0]},"k":[1,1],"queries":[[5,-9],[1e6,3]]}"#;
    assert_eq!(stdout_json(&run_stdin(&["domain"], none_active))["in_domain"], json!([true, true]));
    let empty = r#"{"set":{"kind":"box","b":[0,0]},"k":[1,1]}"#;
    assert_eq!(stdout_json(&run_stdin(&["domain"], empty))["in_domain"], json!([]));
}

#[test]
fn scalarize_golden() {
    let out = run_file(&["scalarize"], "cloud.json");
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["values"], json!([3.0, 2.0, 3.0]));
    assert_eq!(v["argmin_set"], json!([1]));
    let sweep = &v["shifted_variants"][0];
    assert_eq!(sweep["values"], json!([2.0, 1.0, 2.0]));
    assert_eq!(sweep["argmin_set"], json!([1]));
    assert_eq!(sweep["identity_holds"], json!(true));

    let out = run_file(&["scalarize", "--epsilon-sweep", "-2,0.5"], "cloud.json");
    let v = stdout_json(&out);
    let eps: Vec<f64> = v["shifted_variants"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["epsilon"].as_f64().unwrap())
        .collect();
    assert_eq!(eps, vec![-2.0, 0.5]);
    assert_eq!(v["argmin_invariant"], json!(true));

    let single = r#"{"set":{"kind":"box","b":[0,0]},"k":[1,1],"queries":[[4,-1]]}"#;
    assert_eq!(stdout_json(&run_stdin(&["scalarize"], single))["argmin_set"], json!([0]));
}

#[test]
fn shift_outputs() {
    let level = r#"{"set":{"kind":"box","b":[1,2]},"k":[1,1],"queries":[[0,0]],"options":{"epsilon":0.5}}"#;
    let v = stdout_json(&run_stdin(&["shift"], level));
    assert_eq!(v["system"]["b"], json!([1.5, 2.5]));
    assert_eq!(v["values"], json!([-1.5]));
    let point = r#"{"set":{"kind":"box","b":[0,0]},"k":[1,1],"queries":[[3,3]],"options":{"y0":[1,2]}}"#;
    let v = stdout_json(&run_stdin(&["shift"], point));
    assert_eq!(v["values"], json!([2.0]));
}

#[test]
fn sublevel_shifts_with_t() {
    let base = |t: f64| {
        format!(
            r#"{{"set":{{"kind":"halfspaces","W":[[1,2],[3,-1]],"b":[1,-2]}},"k":[1,1],
               "options":{{"t":{t},"grid":{{"lo":[-3,-3],"hi":[3,3],"steps":7}}}}}}"#
        )
    };
    let v = stdout_json(&run_stdin(&["sublevel"], &base(1.5)));
    assert_eq!(v["disagreements"], json!(0));
    let points = v["points"].as_array().unwrap();
    assert_eq!(points.len(), 49);

    // the same classifications at level 0 on the grid moved by −t·k
    let moved: Vec<Vec<f64>> = points
        .iter()
        .map(|p| p["point"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap() - 1.5).collect())
        .collect();
    let at_zero = json!({
        "set": {"kind": "halfspaces", "W": [[1, 2], [3, -1]], "b": [1, -2]},
        "k": [1, 1],
        "queries": moved,
    });
    let w = stdout_json(&run_stdin(&["sublevel"], &at_zero.to_string()));
    for (p, q) in points.iter().zip(w["points"].as_array().unwrap()) {
        assert_eq!(p["in_sublevel"], q["in_sublevel"], "{p} vs {q}");
        assert_eq!(p["in_shifted_closure"], q["in_shifted_closure"]);
    }
    let empty = r#"{"set":{"kind":"box","b":[0,0]},"k":[1,1],"options":{"grid":{"lo":[0,0],"hi":[1,1],"steps":0}}}"#;
    assert_eq!(stdout_json(&run_stdin(&["sublevel"], empty))["points"], json!([]));
}

#[test]
fn check_exit_codes() {
    let out = run_file(&["check", "--suite", "all"], "box.json");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["pass"], json!(true));

    let out = run_file(&["check", "--suite", "translative"], "norm_control.json");
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert!(!v["reports"][0]["violations"].as_array().unwrap().is_empty());

    let out = run_file(&["check", "--suite", "nonsense"], "box.json");
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "unknown_suite");
}

#[test]
fn input_errors_exit_with_two() {
    let cases = [
        "not json",
        r#"{"set":{"kind":"box","b":[0,0]},"k":[1,1],"queries":[[1]]}"#,
        r#"{"set":{"kind":"box","b":[0,0]},"k":[1,-1],"queries":[[1,1]]}"#,
        r#"{"set":{"kind":"box","b":[0,0]},"k":[1,1],"options":{"tol":0}}"#,
    ];
    for input in cases {
        let out = run_stdin(&["eval"], input);
        assert_eq!(out.status.code(), Some(2), "{input}");
    }
    let out = run_stdin(&["check", "--suite", "oracle_equiv"], r#"{"set":{"kind":"lex_cone"},"k":[-1,0]}"#);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_is_deterministic_and_seeded() {
    let a = run_file(&["check", "--suite", "all"], "max_affine.json");
    let b = run_file(&["check", "--suite", "all"], "max_affine.json");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = run_file(&["check", "--suite", "all", "--seed", "7"], "max_affine.json");
    assert_ne!(a.stdout, c.stdout);
    assert_eq!(stdout_json(&c)["seed"], json!(7));

    let env = Command::new(env!("CARGO_BIN_EXE_translative"))
        .args(["check", "--suite", "all", "--input"])
        .arg(data("max_affine.json"))
        .env("TRANSLATIVE_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(env.stdout, c.stdout);
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("translative-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.json");
    let out = Command::new(env!("CARGO_BIN_EXE_translative"))
        .args(["eval", "--input"])
        .arg(data("box.json"))
        .arg("--output")
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["values"][0], json!(3.0));
    std::fs::remove_dir_all(&dir).unwrap();
}
