mod common;

use std::fs;

use common::*;
use tempfile::tempdir;

const RUNS: [&[&str]; 6] = [
    &["generate", "--m1", "2", "--m2", "3", "--samples", "128"],
    &["frenet", "--t", "0.25,1.5"],
    &["indicatrix", "--samples", "64"],
    &["verify", "--m1", "3", "--m2", "1"],
    &["iterate", "--steps", "2"],
    &["minval", "--bound", "6"],
];

fn schema_for(file: &str) -> Option<&'static str> {
    Some(match file {
        "spec.json" => "spec",
        "frenet.json" => "frenet",
        "indicatrix.json" => "indicatrix",
        "verify.json" => "verify",
        "iterate.json" => "iterate",
        "minval.json" => "minval",
        "explore.json" => "explore",
        f if f.ends_with(".manifest.json") => "manifest",
        _ => return None,
    })
}

#[test]
fn manifest_outputs_exist_validate_and_round_trip() {
    let dir = tempdir().unwrap();
    for args in RUNS {
        let r = curvkit(dir.path(), args);
        assert_eq!(r.code, 0, "{args:?}: {}", r.stderr);
        let manifest_path = dir.path().join(format!("{}.manifest.json", args[0]));
        let manifest = read_json(&manifest_path);
        assert_eq!(manifest["command"], args[0]);
        assert_eq!(manifest["exit_code"], 0);
        let outputs: Vec<&str> = manifest["outputs"]
            .as_array()
            .unwrap()
            .iter()
            .map(|o| o.as_str().unwrap())
            .collect();
        assert!(!outputs.is_empty());
        for name in outputs {
            let path = dir.path().join(name);
            assert!(path.exists(), "{name} missing");
            assert_eq!(
                reserialize(&path),
                fs::read_to_string(&path).unwrap(),
                "{name}"
            );
            if let Some(schema) = schema_for(name) {
                assert_schema(schema, &read_json(&path));
            }
        }
    }
}

#[test]
fn reruns_are_byte_identical_outside_the_manifest() {
    let a = tempdir().unwrap();
    let b = tempdir().unwrap();
    for args in RUNS {
        assert_eq!(curvkit(a.path(), args).code, 0);
        assert_eq!(curvkit(b.path(), args).code, 0);
    }
    let mut compared = 0;
    for entry in fs::read_dir(a.path()).unwrap() {
        let name = entry.unwrap().file_name().into_string().unwrap();
        if name.ends_with(".manifest.json") {
            continue;
        }
        assert_eq!(
            fs::read(a.path().join(&name)).unwrap(),
            fs::read(b.path().join(&name)).unwrap(),
            "{name}"
        );
        compared += 1;
    }
    assert!(compared >= 9);
}

#[test]
fn manifest_records_parameters_and_tolerances() {
    let dir = tempdir().unwrap();
    assert_eq!(curvkit(dir.path(), &["verify", "--tol", "1e-7"]).code, 0);
    let manifest = read_json(&dir.path().join("verify.manifest.json"));
    assert_eq!(manifest["parameters"]["tol"], 1e-7);
    assert_eq!(manifest["parameters"]["m2"], 2);
    assert_eq!(manifest["tolerances"]["identities"], 1e-7);
    assert_eq!(manifest["artifact_version"], env!("CARGO_PKG_VERSION"));
    assert!(manifest["duration_seconds"].as_f64().unwrap() >= 0.0);
}
