//! Emitted JSON validates against the schemas shipped in `docs/schemas`.

mod common;

use std::fs;

use common::{run, workspace_root, write_config, ELLIPSOID, GRAPH, SPHERE, TORUS};
use serde_json::Value;

fn validator(name: &str) -> jsonschema::Validator {
    let path = workspace_root().join("docs/schemas").join(name);
    let schema: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn check(v: &jsonschema::Validator, doc: &Value) {
    let errors: Vec<String> = v.iter_errors(doc).map(|e| format!("{} at {}", e, e.instance_path())).collect();
    assert!(errors.is_empty(), "{errors:#?}");
}

fn load(path: &std::path::Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn point_reports_validate() {
    let v = validator("point.schema.json");
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (SPHERE.to_string(), "1.2", "2.0"),
        (format!("{ELLIPSOID}\neps = 0.05"), "1.3", "2.0"),
        (GRAPH.to_string(), "-0.3", "0.1"),
        (GRAPH.to_string(), "0.3", "0.2"),
        (TORUS.to_string(), "1.0", "1.0"),
    ];
    for (k, (cfg, u, w)) in cases.iter().enumerate() {
        let p = write_config(dir.path(), &format!("c{k}.toml"), cfg);
        let o = run(&["point", "-c", p.to_str().unwrap(), "--", u, w], None);
        assert_eq!(o.status.code(), Some(0));
        check(&v, &serde_json::from_slice(&o.stdout).unwrap());
    }
}

#[test]
fn field_json_validates() {
    let v = validator("field.schema.json");
    let dir = tempfile::tempdir().unwrap();
    // includes not-spacelike rows
    let p = write_config(dir.path(), "f.toml", &format!("{ELLIPSOID}\neps = 0.5\n[grid]\nnu = 12\nnv = 12"));
    let o = run(&["field", "-c", p.to_str().unwrap(), "--set", "output.format=json"], None);
    assert_eq!(o.status.code(), Some(0));
    let doc = load(&dir.path().join("out/field.json"));
    assert_eq!(doc.as_array().unwrap().len(), 144);
    assert!(doc.as_array().unwrap().iter().any(|r| r["class"] == "not_spacelike"));
    check(&v, &doc);
}

#[test]
fn umbilic_reports_validate() {
    let v = validator("umbilics.schema.json");
    let dir = tempfile::tempdir().unwrap();
    let configs = [
        format!("{ELLIPSOID}\n[grid]\nnu = 64\nnv = 64"),
        format!("{SPHERE}\n[grid]\nnu = 16\nnv = 16"),
        format!("{GRAPH}\n[field]\nnormal = \"null\"\nn1 = 1.0\nn2 = 0.0\n[grid]\nnu = 32\nnv = 32"),
    ];
    for (k, cfg) in configs.iter().enumerate() {
        let p = write_config(dir.path(), &format!("u{k}.toml"), cfg);
        assert_eq!(run(&["umbilics", "-c", p.to_str().unwrap()], None).status.code(), Some(0));
        check(&v, &load(&dir.path().join("out/umbilics.json")));
    }
}

#[test]
fn line_index_validates() {
    let v = validator("lines.schema.json");
    let dir = tempfile::tempdir().unwrap();
    let cfg = format!("{GRAPH}\n[field]\nkind = \"mean\"\n\n[[seeds]]\nu = 0.3\nv = 0.2\n\n[[seeds]]\nu = 2.0\nv = 0.0\n");
    let p = write_config(dir.path(), "l.toml", &cfg);
    assert_eq!(run(&["lines", "-c", p.to_str().unwrap()], None).status.code(), Some(0));
    let doc = load(&dir.path().join("out/lines.json"));
    assert!(doc["lines"][1]["error"].is_string());
    check(&v, &doc);
}
