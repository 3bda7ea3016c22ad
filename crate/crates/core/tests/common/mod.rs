#![allow(dead_code)]

use std::path::PathBuf;

use fastpd::{model::from_xgboost_json, Dataset, ParseOptions, TreeEnsemble};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

/// Loads `<stem>.json` with the base score and feature count from
/// `<stem>_meta.json`.
pub fn load_xgboost(stem: &str) -> TreeEnsemble {
    let meta: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(fixture_path(&format!("{stem}_meta.json"))).unwrap(),
    )
    .unwrap();
    let options = ParseOptions {
        base_score: meta["base_score"].as_f64(),
        num_features: meta["num_features"].as_u64().map(|v| v as usize),
        feature_names: None,
    };
    from_xgboost_json(
        &std::fs::read_to_string(fixture_path(&format!("{stem}.json"))).unwrap(),
        &options,
    )
    .unwrap()
}

/// Points and the trainer's own predictions, from `<stem>_points.csv`.
pub fn load_points(stem: &str) -> (Dataset, Vec<f64>) {
    let table = Dataset::load_csv(
        std::fs::File::open(fixture_path(&format!("{stem}_points.csv"))).unwrap(),
        true,
    )
    .unwrap();
    let d = table.d() - 1;
    let mut values = Vec::with_capacity(table.n() * d);
    let mut preds = Vec::with_capacity(table.n());
    for row in table.rows() {
        values.extend_from_slice(&row[..d]);
        preds.push(row[d]);
    }
    (Dataset::new(values, table.n(), d).unwrap(), preds)
}
