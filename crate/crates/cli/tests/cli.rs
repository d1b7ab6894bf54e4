use std::io::Write;
use std::process::Command;

use serde_json::Value;
use stringnet_cli::schemas::{schema, SCHEMAS};

fn stringnet(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_stringnet"))
        .args(args)
        .env_remove(stringnet_cli::CAP_ENV)
        .output()
        .expect("binary runs");
    let text = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(&text).unwrap_or(Value::Null);
    (out.status.code().unwrap(), json, text)
}

fn assert_valid(name: &str, doc: &Value) {
    let validator = jsonschema::validator_for(&schema(name).unwrap()).unwrap();
    let errors: Vec<String> = validator.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}\n{doc:#}");
}

const INVOCATIONS: &[&[&str]] = &[
    &["sn-dim", "--r", "2", "--genus", "3"],
    &["sn-dim", "--r", "3", "--genus", "2"],
    &["sphere", "--r", "2"],
    &["torus-basis", "--r", "2"],
    &["bp-operator", "--r", "2", "--genus", "1", "--matrix"],
    &["bp-operator", "--r", "3", "--genus", "1", "--convention", "clockwise-left"],
    &["annulus", "--r", "3", "--a", "1", "--b", "2"],
    &["rspin-count", "--r", "3", "--genus", "2"],
    &["rspin-enumerate", "--r", "2", "--genus", "1"],
    &["rspin-check", "--genus", "1", "--r", "2", "--indices", "0,1"],
    &["sigma-f", "--r", "2", "--genus", "1", "--indices", "1,1"],
    &["sigma-f", "--r", "3", "--genus", "1"],
    &["frobenius-check", "--r", "4"],
    &["charge", "--sample", "z5", "--j", "2"],
    &["charge", "--sample", "semion", "--j", "s", "--u", "1", "--v", "1"],
    &["validate-modular", "--sample", "z3"],
];

#[test]
fn every_subcommand_output_matches_its_schema() {
    for args in INVOCATIONS {
        let (code, doc, _) = stringnet(args);
        assert_eq!(code, 0, "{args:?}");
        assert_eq!(doc["command"], args[0]);
        assert_valid(args[0], &doc);
    }
}

#[test]
fn decimal_rendering_still_matches_the_schemas() {
    let (code, doc, _) = stringnet(&["--decimal", "frobenius-check", "--r", "3"]);
    assert_eq!(code, 0);
    assert_valid("frobenius-check", &doc);
    let first = &doc["nakayama_diagonal"][1];
    assert_eq!(first["decimal"], "-0.500000000000 -0.866025403784i");
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [&["sigma-f", "--r", "2", "--genus", "2"][..], &["torus-basis", "--r", "3"]] {
        assert_eq!(stringnet(args).2, stringnet(args).2);
    }
}

#[test]
fn documented_examples() {
    let (code, doc, _) = stringnet(&["sn-dim", "--r", "2", "--genus", "3"]);
    assert_eq!((code, doc["dim"].as_u64()), (0, Some(64)));
    let (code, doc, _) = stringnet(&["rspin-count", "--r", "3", "--genus", "2"]);
    assert_eq!((code, doc["count"].as_u64()), (0, Some(0)));
    let (code, doc, _) = stringnet(&["sn-dim", "--r", "0", "--genus", "1"]);
    assert_eq!(code, 2);
    assert_eq!(doc["error"]["kind"], "usage");
    assert_valid("error", &doc);
}

#[test]
fn flag_errors_exit_with_status_two() {
    for args in [
        &["sphere", "--r", "-1"][..],
        &["sn-dim", "--r", "2", "--genus", "-1"],
        &["rspin-enumerate", "--r", "2", "--complex", "/nonexistent/complex.json"],
        &["validate-modular", "--data", "/nonexistent/data.json"],
        &["sphere", "--r", "4", "--zeta-exponent", "2"],
        &["charge", "--sample", "z3", "--j", "nope"],
        &["no-such-command"],
        &[],
    ] {
        let (code, doc, _) = stringnet(args);
        assert_eq!(code, 2, "{args:?}");
        assert_valid("error", &doc);
    }
}

#[test]
fn computation_errors_exit_with_status_one() {
    let (code, doc, _) = stringnet(&["bp-operator", "--r", "3", "--genus", "2", "--cap", "10"]);
    assert_eq!(code, 1);
    assert_eq!(doc["error"]["kind"], "size-cap");
    let (code, doc, _) = stringnet(&["charge", "--sample", "semion", "--j", "1", "--u", "s", "--v", "s"]);
    assert_eq!((code, doc["dim"].as_u64()), (0, Some(0)));
    let (code, doc, _) = stringnet(&["rspin-check", "--genus", "1", "--r", "2", "--indices", "0"]);
    assert_eq!(code, 2, "{doc}");
}

#[test]
fn cap_override_is_acknowledged() {
    let out = Command::new(env!("CARGO_BIN_EXE_stringnet"))
        .args(["rspin-enumerate", "--r", "2", "--genus", "1", "--cap", "4"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["inputs"]["cap_override"], true);
    assert!(String::from_utf8_lossy(&out.stderr).contains("overridden"));
}

#[test]
fn cap_default_comes_from_the_environment() {
    let run = |cap: &str| {
        Command::new(env!("CARGO_BIN_EXE_stringnet"))
            .args(["rspin-enumerate", "--r", "2", "--genus", "2"])
            .env(stringnet_cli::CAP_ENV, cap)
            .output()
            .unwrap()
    };
    assert_eq!(run("8").status.code(), Some(1));
    let ok = run("16");
    assert!(ok.status.success());
    let doc: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!((doc["count"].as_u64(), doc["inputs"]["cap_override"].as_bool()), (Some(16), Some(false)));
    assert_eq!(run("many").status.code(), Some(2));
}

#[test]
fn complex_and_marking_files_are_read() {
    let dir = std::env::temp_dir().join(format!("stringnet-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let complex = dir.join("torus.json");
    let torus = stringnet_core::rspin::decomposition_for_genus(1);
    std::fs::write(&complex, serde_json::to_string(&torus).unwrap()).unwrap();
    let marking = dir.join("marking.json");
    std::fs::File::create(&marking)
        .unwrap()
        .write_all(br#"{"r": 2, "indices": {"0": 1, "1": 1}}"#)
        .unwrap();
    let c = complex.to_str().unwrap();
    let (code, doc, _) = stringnet(&["rspin-check", "--complex", c, "--marking", marking.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_valid("rspin-check", &doc);
    let (code, doc, _) = stringnet(&["rspin-enumerate", "--r", "2", "--complex", c]);
    assert_eq!((code, doc["count"].as_u64()), (0, Some(4)));

    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"labels":["1","x"],"dual":[0,1],"dims":[{"order":1,"coeffs":["1"]},{"order":1,"coeffs":["1"]}],"s":[[{"order":1,"coeffs":["1"]},{"order":1,"coeffs":["1"]}],[{"order":1,"coeffs":["1"]},{"order":1,"coeffs":["1"]}]]}"#).unwrap();
    let (code, doc, _) = stringnet(&["validate-modular", "--data", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(doc["valid"], false);
    assert!(!doc["violations"].as_array().unwrap().is_empty());
    assert_valid("validate-modular", &doc);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn json_schema_flag_prints_every_schema() {
    let (code, doc, _) = stringnet(&["--json-schema"]);
    assert_eq!(code, 0);
    assert_eq!(doc.as_object().unwrap().len(), SCHEMAS.len());
    let (code, doc, _) = stringnet(&["--json-schema", "charge"]);
    assert_eq!((code, &doc["title"]), (0, &Value::from("stringnet charge")));
    assert_eq!(stringnet(&["--json-schema", "nope"]).0, 2);
}

#[test]
fn run_is_usable_as_a_library() {
    let (code, out) = stringnet_cli::run(["stringnet", "sphere", "--r", "1"]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["dim"], 1);
    let (code, _) = stringnet_cli::run(["stringnet", "--help"]);
    assert_eq!(code, 0);
}
