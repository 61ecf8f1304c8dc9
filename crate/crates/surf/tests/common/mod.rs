#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub const BIN: &str = env!("CARGO_BIN_EXE_spacelike-surf");

pub fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

/// Runs the binary with an optional thread cap.
pub fn run(args: &[&str], threads: Option<usize>) -> Output {
    let mut c = Command::new(BIN);
    c.args(args);
    match threads {
        Some(n) => c.env("SPACELIKE_SURF_THREADS", n.to_string()),
        None => c.env_remove("SPACELIKE_SURF_THREADS"),
    };
    c.output().expect("binary runs")
}

/// Writes `text` as a config file in `dir`, with the output directory
/// pointed at `dir/out`.
pub fn write_config(dir: &Path, name: &str, text: &str) -> PathBuf {
    let out = dir.join("out");
    let body = format!("{text}\n[output]\ndir = {:?}\n", out.to_str().unwrap());
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

pub const ELLIPSOID: &str = r#"
[surface]
fixture = "ellipsoid"
a = 3.0
b = 2.0
c = 1.0
"#;

pub const TORUS: &str = r#"
[surface]
fixture = "torus"
big_r = 2.0
r = 1.0
"#;

pub const SPHERE: &str = r#"
[surface]
fixture = "sphere"
r = 1.0
"#;

pub const HYPERBOLIC: &str = r#"
[surface]
fixture = "hyperbolic"
c20 = 0.3
c11 = -0.2
c02 = 0.5
c_sin = 0.1
"#;

pub const GRAPH: &str = r#"
[surface]
fixture = "graph4"
a20 = 0.4
a11 = -0.3
a02 = 0.2
b21 = 1.0
b03 = 3.0
"#;
