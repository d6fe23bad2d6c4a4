use std::path::Path;

use hurwitz::generate::Kind;
use hurwitz_cli::commands::{self, Settings};
use serde_json::Value;

fn validator() -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/report-schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

fn read(name: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)).unwrap()
}

fn assert_valid(v: &jsonschema::Validator, report: &Value) {
    let errors: Vec<String> = v.iter_errors(report).map(|e| format!("{} at {}", e, e.instance_path)).collect();
    assert!(errors.is_empty(), "{}", errors.join("\n"));
}

#[test]
fn analyze_reports_validate() {
    let v = validator();
    let full = Settings { fractions: true, grid: Some(9), ..Settings::default() };
    for (name, settings) in
        [("diagonal_cubic.json", full), ("z_cubed_plus_z.json", full), ("diagonal_cubic.json", Settings::default())]
    {
        assert_valid(&v, &commands::analyze(name, &read(name), &settings).unwrap().report);
    }
    for (seed, kind) in [(1, Kind::Stable), (2, Kind::Unstable), (3, Kind::Boundary)] {
        for (p, n) in [(1, 4), (2, 3), (3, 2)] {
            let text = commands::gen(p, n, kind, seed).unwrap();
            assert_valid(&v, &commands::analyze("gen", &text, &full).unwrap().report);
        }
    }
}

#[test]
fn hn_and_markov_reports_validate() {
    let v = validator();
    for name in ["two_by_two_fraction.json", "identity_over_z.json"] {
        assert_valid(&v, &commands::hn(name, &read(name), &Settings::default()).unwrap().report);
    }
    let out =
        commands::markov("f", &read("two_by_two_fraction.json"), 400, &[0, 1, 300], &Settings::default()).unwrap();
    assert_valid(&v, &out.report);
    let out = commands::markov("f", &read("diagonal_cubic.json"), 6, &[2], &Settings::default()).unwrap();
    assert_valid(&v, &out.report);
}

#[test]
fn schema_rejects_unknown_keys() {
    let v = validator();
    let mut report = commands::hn("f", &read("two_by_two_fraction.json"), &Settings::default()).unwrap().report;
    report["surprise"] = Value::Bool(true);
    assert!(!v.is_valid(&report));
}
