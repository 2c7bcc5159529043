use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use jsonschema::JSONSchema;
use serde_json::Value;
use tempfile::TempDir;

fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas")
}

fn schema(name: &str) -> JSONSchema {
    let text = std::fs::read_to_string(schema_dir().join(format!("{name}.schema.json"))).unwrap();
    let value: Value = serde_json::from_str(&text).unwrap();
    JSONSchema::compile(&value).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn assert_valid(name: &str, instance: &Value) {
    let compiled = schema(name);
    if let Err(errors) = compiled.validate(instance) {
        let messages: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("{name} rejected {instance}: {messages:?}");
    };
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qfourier")).args(args).output().unwrap()
}

fn run_json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

struct Inputs {
    _dir: TempDir,
    vector: String,
    program: String,
    function: String,
    degenerate: String,
}

fn inputs() -> Inputs {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, body: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, body).unwrap();
        p.to_str().unwrap().to_string()
    };
    let vector = write("v.json", "[[1,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0]]");
    let program = write(
        "bell.json",
        r#"{"n": 2, "steps": [{"gate": "H", "targets": [0]}, {"gate": "CNOT", "targets": [0, 1]}]}"#,
    );
    let function = write("f.json", r#"{"group": "Z15", "values": [0,1,2,3,4,0,1,2,3,4,0,1,2,3,4]}"#);
    let degenerate = write("bad.json", r#"{"group": "Z4", "values": [0, 0, 1, 2]}"#);
    Inputs {
        _dir: dir,
        vector,
        program,
        function,
        degenerate,
    }
}

#[test]
fn input_files_match_their_schemas() {
    let i = inputs();
    let read = |p: &str| serde_json::from_str::<Value>(&std::fs::read_to_string(p).unwrap()).unwrap();
    assert_valid("complex-vector", &read(&i.vector));
    assert_valid("program", &read(&i.program));
    assert_valid("function-table", &read(&i.function));
}

#[test]
fn every_subcommand_output_matches_its_schema() {
    let i = inputs();
    for method in ["dense", "tower", "radix2"] {
        let v = run_json(&["fft", "--group", "Z8", "--method", method, "--input", &i.vector, "--emit-counts"]);
        assert_valid("fft", &v);
    }
    assert_valid("fft", &run_json(&["fft", "--group", "Z2^3", "--method", "walsh", "--input", &i.vector]));
    assert_valid("simulate", &run_json(&["simulate", "--program", &i.program]));
    assert_valid("simulate", &run_json(&["simulate", "--program", &i.program, "--measure", "0"]));
    for reorder in ["swaps", "relabel"] {
        assert_valid("qft-compile", &run_json(&["qft-compile", "--m", "4", "--reorder", reorder]));
    }
    for mode in ["exact", "simulate"] {
        assert_valid("period-find", &run_json(&["period-find", "--function", &i.function, "--mode", mode]));
    }
    assert_valid("simon", &run_json(&["simon", "--n", "3", "--mask", "101", "--seed", "7"]));
    assert_valid("bench", &run_json(&["bench", "--group", "Z64", "--methods", "dense,radix2,tower", "--timing"]));
}

#[test]
fn same_seed_gives_identical_bytes() {
    let i = inputs();
    let commands: Vec<Vec<&str>> = vec![
        vec!["simulate", "--program", &i.program, "--seed", "3"],
        vec!["period-find", "--function", &i.function, "--seed", "3", "--mode", "simulate"],
        vec!["simon", "--n", "6", "--mask", "101101", "--seed", "3"],
        vec!["bench", "--group", "Z4xZ6", "--seed", "3"],
        vec!["qft-compile", "--m", "5", "--pretty"],
    ];
    for args in commands {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn documented_examples() {
    let i = inputs();
    let simon = run_json(&["simon", "--n", "3", "--mask", "101", "--seed", "7"]);
    assert_eq!(simon["recovered_mask"], "101");

    let v = run_json(&["fft", "--group", "Z8", "--method", "radix2", "--input", &i.vector, "--emit-counts"]);
    let spectrum = v["spectrum"].as_array().unwrap();
    assert_eq!(spectrum.len(), 8);
    assert_eq!(v["counts"]["complex_multiplies"], 24);

    let bench = run_json(&["bench", "--group", "Z4096", "--methods", "dense,radix2"]);
    let rows = bench["results"].as_array().unwrap();
    let dense = rows[0]["counts"]["complex_multiplies"].as_u64().unwrap();
    let radix2 = rows[1]["counts"]["complex_multiplies"].as_u64().unwrap();
    assert!(radix2 * 50 < dense, "{radix2} vs {dense}");
    assert!(rows.iter().all(|r| r["within_tolerance"] == true));

    let found = run_json(&["period-find", "--function", &i.function]);
    assert_eq!(found["subgroup"]["members"], serde_json::json!([0, 5, 10]));
    assert_eq!(found["converged"], true);
}

#[test]
fn exit_codes() {
    let i = inputs();
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["fft", "--group", "Z8"]).status.code(), Some(2));
    assert_eq!(run(&["qft-compile", "--m", "three"]).status.code(), Some(2));

    let degenerate = run(&["period-find", "--function", &i.degenerate]);
    assert_eq!(degenerate.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&degenerate.stderr).starts_with("error: "));
    assert_eq!(run(&["fft", "--group", "Z5", "--method", "radix2", "--input", &i.vector]).status.code(), Some(1));
    assert_eq!(run(&["fft", "--group", "Z0", "--input", &i.vector]).status.code(), Some(1));
    assert_eq!(run(&["simulate", "--program", "/nonexistent/p.json"]).status.code(), Some(1));
    assert_eq!(run(&["simon", "--n", "3", "--mask", "10"]).status.code(), Some(1));
    assert_eq!(run(&["qft-compile", "--m", "0"]).status.code(), Some(1));
}

#[test]
fn out_flag_writes_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("qft.json");
    let out = run(&["qft-compile", "--m", "3", "--out", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(target).unwrap()).unwrap();
    assert_eq!(v["final_permutation"], serde_json::json!([2, 1, 0]));
}
