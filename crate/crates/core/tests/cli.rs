use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

const TWO_BLOCKS: &str = r#"{"rows": [["2","x-1","0","0"],["0","0","2","x-1"]]}"#;
const NON_TORIC: &str = r#"[["x","2*x^2+1","0"],["x^2+1","0","4*x^2+2"]]"#;
const F1F2: &str = r#"[["1-x","2","0","0"],["0","0","1-x","2"]]"#;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_difftoric"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin().args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn implicitize_example_matrix() {
    let out = run(&["implicitize", TWO_BLOCKS, "--verify"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["result"]["binomials"], json!(["y1*y2^2 - y1^x", "y3*y4^2 - y3^x"]));
}

#[test]
fn zxfactor_finds_polynomial_witness() {
    let out = run(&["zxfactor", NON_TORIC, "--verify"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["result"]["witnesses"], json!([{ "h": ["x", "-1", "4*x"], "p": "2*x^2+1" }]));
}

#[test]
fn jacobi_from_stdin() {
    let out = run_stdin(&["jacobi"], "[[1,2],[3,4]]");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["result"]["jacobi"], json!(5));
    let out = run_stdin(&["jacobi", "-", "--format", "pretty"], r#"[["-inf",2],[3,"-inf"]]"#);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "5\n");
}

#[test]
fn input_from_file() {
    let dir = std::env::temp_dir().join(format!("difftoric-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ob.json");
    std::fs::write(&path, TWO_BLOCKS).unwrap();
    let out = run(&["order-bound", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["result"], json!({ "rows": [{ "o": 1, "o_low": 0 }, { "o": 1, "o_low": 0 }], "bound": 2 }));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn parametrize_then_implicitize_round_trip() {
    let p = run(&["parametrize", F1F2, "--verify"]);
    assert_eq!(p.status.code(), Some(0));
    let back = run_stdin(&["implicitize", "--verify"], &String::from_utf8(p.stdout).unwrap());
    assert_eq!(back.status.code(), Some(0));
    let lattice = json_of(&back)["result"]["lattice"].to_string();
    let member = |vec: &str| {
        let input = format!(r#"{{"vector": {vec}, "lattice": {lattice}}}"#);
        json_of(&run(&["member", &input]))["result"]["member"].clone()
    };
    assert_eq!(member(r#"["1-x","2","0","0"]"#), json!(true));
    assert_eq!(member(r#"["0","0","1-x","2"]"#), json!(true));
    let input = format!(r#"{{"vector": ["-x+1","2","0","0"], "lattice": {F1F2}}}"#);
    assert_eq!(json_of(&run(&["member", &input]))["result"]["member"], json!(true));
}

#[test]
fn output_is_deterministic() {
    for (cmd, input) in [("saturate", NON_TORIC), ("implicitize", TWO_BLOCKS), ("ghnf", NON_TORIC)] {
        let a = run(&[cmd, input, "--verify"]);
        let b = run(&[cmd, input, "--verify"]);
        assert_eq!(a.stdout, b.stdout, "{cmd}");
    }
}

#[test]
fn error_exit_codes() {
    let cases: [(&[&str], i32, &str); 6] = [
        (&["ghnf", r#"[["x+"]]"#], 2, "parse"),
        (&["jacobi", "[[1,2],[3]]"], 2, "not_square"),
        (&["member", r#"{"vector": ["1"]}"#], 2, "invalid_input"),
        (&["parametrize", NON_TORIC], 3, "not_toric"),
        (&["order-bound", r#"{"rows": [["1","x"],["0","0"]]}"#], 3, "zero_row"),
        (&["faces", r#"{"generators": [["1"],["2"],["3"]]}"#, "--subset-cap", "2"], 4, "resource_exhausted"),
    ];
    for (args, code, kind) in cases {
        let out = run(args);
        assert_eq!(out.status.code(), Some(code), "{args:?}");
        let v = json_of(&out);
        assert_eq!(v["status"], json!("error"));
        assert_eq!(v["kind"], json!(kind), "{args:?}");
    }
    let out = run(&["ghnf", "/nonexistent/input.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn saturate_first_opt_in() {
    let out = run(&["parametrize", NON_TORIC, "--saturate-first", "--verify"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["result"]["saturated"], json!(true));
}

#[test]
fn pretty_faces_and_face_sat() {
    let out = run(&["faces", r#"{"generators":[["x","1"],["x","2"],["x","3"]]}"#, "--format", "pretty"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("4 face(s):"), "{text}");
    let out = run(&["face-sat", r#"{"generators":[["2","0"],["1","1"],["0","1"]],"face":[0]}"#, "--verify"]);
    assert_eq!(json_of(&out)["result"], json!({ "holds": false, "witness": ["1", "0"] }));
}

#[test]
fn remaining_commands_run() {
    let ok = |args: &[&str]| {
        let out = run(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
        json_of(&out)
    };
    assert_eq!(ok(&["is-ghnf", r#"[["x","2*x^2+1","0"],["1","x","2"]]"#])["result"]["is_ghnf"], json!(true));
    assert_eq!(ok(&["is-toric", NON_TORIC, "--verify"])["result"]["is_toric"], json!(false));
    assert_eq!(ok(&["zfactor", r#"[["2","2*x"]]"#, "--verify"])["result"]["witnesses"][0]["h"], json!(["1", "x"]));
    assert_eq!(ok(&["syzygy", TWO_BLOCKS, "--verify"])["result"]["columns"].as_array().unwrap().len(), 2);
    assert_eq!(ok(&["complement", F1F2, "--verify"])["result"]["columns"].as_array().unwrap().len(), 2);
    assert_eq!(ok(&["intersect", r#"{"left": [["2"]], "right": [["3"]]}"#, "--verify"])["result"]["columns"], json!([["6"]]));
    assert_eq!(ok(&["is-pointed", r#"{"generators":[["1"],["-1"]]}"#, "--verify"])["result"]["pointed"], json!(false));
}
