#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn curvkit(out: &Path, args: &[&str]) -> Outcome {
    let output = Command::new(env!("CARGO_BIN_EXE_curvkit"))
        .arg("--out-dir")
        .arg(out)
        .args(args)
        .env_remove("CURVKIT_OUT_DIR")
        .output()
        .expect("spawn curvkit");
    Outcome {
        code: output.status.code().expect("exit code"),
        stdout: String::from_utf8(output.stdout).unwrap(),
        stderr: String::from_utf8(output.stderr).unwrap(),
    }
}

pub fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn read_json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

/// Asserts that `doc` validates against `schemas/<name>.schema.json`.
pub fn assert_schema(name: &str, doc: &Value) {
    let schema = read_json(
        &crate_dir()
            .join("schemas")
            .join(format!("{name}.schema.json")),
    );
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator
        .iter_errors(doc)
        .map(|e| format!("{e} at {}", e.instance_path()))
        .collect();
    assert!(errors.is_empty(), "{name}: {errors:#?}");
}

/// Parsed CSV: header and rows.
pub fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(String::from).collect())
        .collect();
    (header, rows)
}

pub fn column(header: &[String], rows: &[Vec<String>], name: &str) -> Vec<f64> {
    let i = header.iter().position(|h| h == name).unwrap();
    rows.iter().map(|r| r[i].parse().unwrap()).collect()
}

/// Parse and re-serialize, as the writer does.
pub fn reserialize(path: &Path) -> String {
    let text = fs::read_to_string(path).unwrap();
    if path.extension().unwrap() == "json" {
        let v: Value = serde_json::from_str(&text).unwrap();
        serde_json::to_string_pretty(&v).unwrap() + "\n"
    } else {
        let (header, rows) = read_csv(path);
        let mut out = header.join(",") + "\n";
        for row in rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c.parse::<f64>() {
                    Ok(v) => format!("{v}"),
                    Err(_) => c.clone(),
                })
                .collect();
            out += &(cells.join(",") + "\n");
        }
        out
    }
}
