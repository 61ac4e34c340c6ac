#![allow(dead_code)]

use std::path::Path;

use faddeev_harness::ExperimentConfig;

pub fn schema() -> jsonschema::JSONSchema {
    let value: serde_json::Value = serde_json::from_str(faddeev_harness::SUMMARY_SCHEMA).unwrap();
    jsonschema::JSONSchema::compile(&value).expect("schema compiles")
}

pub fn assert_valid(schema: &jsonschema::JSONSchema, text: &str) {
    let doc: serde_json::Value = serde_json::from_str(text).unwrap();
    let result = schema.validate(&doc).map_err(|errors| errors.map(|e| format!("{} at {}", e, e.instance_path)).collect::<Vec<_>>());
    if let Err(msgs) = result {
        panic!("summary violates schema: {msgs:#?}");
    }
}

pub fn config(text: &str, out: &Path) -> ExperimentConfig {
    let mut c = ExperimentConfig::from_toml(text, Path::new("inline")).unwrap();
    c.output_dir = out.to_path_buf();
    c
}

pub fn write_config(dir: &Path, name: &str, text: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}
