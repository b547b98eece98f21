mod common;

use std::f64::consts::PI;
use std::fs;

use common::*;
use tempfile::tempdir;

#[test]
fn missing_or_malformed_config_exits_one() {
    let dir = tempdir().unwrap();
    let r = curvkit(dir.path(), &["explore", "--config", "no-such-file.json"]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("no-such-file.json"), "{}", r.stderr);

    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"budgett": 10}"#).unwrap();
    assert_eq!(
        curvkit(dir.path(), &["explore", "--config", bad.to_str().unwrap()]).code,
        1
    );
    fs::write(&bad, "{").unwrap();
    assert_eq!(
        curvkit(dir.path(), &["explore", "--config", bad.to_str().unwrap()]).code,
        1
    );
    fs::write(&bad, r#"{"samples": 3}"#).unwrap();
    assert_eq!(
        curvkit(dir.path(), &["explore", "--config", bad.to_str().unwrap()]).code,
        1
    );
}

#[test]
fn zero_budget_echoes_the_initial_value() {
    let dir = tempdir().unwrap();
    let config = dir.path().join("config.json");
    fs::write(&config, r#"{"budget": 0}"#).unwrap();
    let r = curvkit(
        dir.path(),
        &["explore", "--config", config.to_str().unwrap()],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    let doc = read_json(&dir.path().join("explore.json"));
    assert_schema("explore", &doc);
    let result = &doc["result"];
    assert_eq!(result["converged"], false);
    assert_eq!(result["best_value"], result["initial_value"]);
    assert_eq!(doc["finding"], false);
    for name in ["explore.json", "explore_trace.csv", "explore.manifest.json"] {
        let path = dir.path().join(name);
        assert_eq!(
            reserialize(&path),
            fs::read_to_string(&path).unwrap(),
            "{name}"
        );
    }
    assert_schema(
        "manifest",
        &read_json(&dir.path().join("explore.manifest.json")),
    );
}

#[test]
fn bundled_config_stays_above_the_bound() {
    let config = crate_dir().join("configs/default.json");
    assert_schema("explore-config", &read_json(&config));
    let dir = tempdir().unwrap();
    let r = curvkit(
        dir.path(),
        &["explore", "--config", config.to_str().unwrap()],
    );
    assert!(r.code == 0 || r.code == 2, "{}", r.stderr);
    let doc = read_json(&dir.path().join("explore.json"));
    assert_schema("explore", &doc);
    let best = doc["result"]["best_value"].as_f64().unwrap();
    if r.code == 2 {
        // a finding must come with a re-validated feasible curve
        assert_eq!(doc["finding"], true);
        assert!(doc["revalidation"]["value"].as_f64().unwrap() < 2.0 * 5f64.sqrt() * PI);
    } else {
        assert!(best >= 14.03, "{best}");
    }
    assert!((doc["revalidation"]["value"].as_f64().unwrap() - best).abs() < 1e-9);
    assert_eq!(doc["revalidation"]["fenchel_holds"], true);

    let (header, rows) = read_csv(&dir.path().join("explore_trace.csv"));
    assert_eq!(header, ["iteration", "evaluations", "objective"]);
    let objective = column(&header, &rows, "objective");
    assert!(objective.windows(2).all(|w| w[1] <= w[0]));
    let manifest = read_json(&dir.path().join("explore.manifest.json"));
    assert_eq!(manifest["seed"], 42);
}
