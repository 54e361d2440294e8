#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

use jsonschema::JSONSchema;
use serde_json::Value;

pub fn data(rel: &str) -> String {
    format!("{}/../../data/{rel}", env!("CARGO_MANIFEST_DIR"))
}

fn schema_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schemas")
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Run {
    pub fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", self.stdout))
    }
}

pub fn run(args: &[&str]) -> Run {
    run_env(args, &[])
}

pub fn run_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lonesieve"));
    cmd.args(args).env_remove("LONESIEVE_CACHE");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn load(name: &str) -> Value {
    let text = std::fs::read_to_string(schema_dir().join(name)).unwrap();
    serde_json::from_str(&text).unwrap()
}

/// Violations of `schemas/{name}.schema.json`, resolving references to sibling files.
pub fn schema_errors(name: &str, doc: &Value) -> Vec<String> {
    let mut opts = JSONSchema::options();
    for entry in std::fs::read_dir(schema_dir()).unwrap() {
        let file = entry.unwrap().file_name().into_string().unwrap();
        opts.with_document(format!("https://lonesieve.invalid/schemas/{file}"), load(&file));
    }
    let schema = opts.compile(&load(&format!("{name}.schema.json"))).expect("schema compiles");
    let errors: Vec<String> = match schema.validate(doc) {
        Ok(()) => vec![],
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    errors
}

pub fn validate(name: &str, doc: &Value) {
    let errors = schema_errors(name, doc);
    assert!(errors.is_empty(), "{name} output violates its schema:\n{}", errors.join("\n"));
}
