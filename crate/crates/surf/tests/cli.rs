mod common;

use std::fs;

use common::{run, write_config, ELLIPSOID, GRAPH, HYPERBOLIC, SPHERE, TORUS};
use serde_json::Value;

fn stdout(o: &std::process::Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &std::process::Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn config_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_config(dir.path(), "bad.toml", &format!("{ELLIPSOID}\nunknown_key = 1"));
    let o = run(&["field", "-c", bad.to_str().unwrap()], Some(1));
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));

    let neg = write_config(dir.path(), "neg.toml", &format!("{ELLIPSOID}\n[tolerances]\ntrace_tol = 0.0\nmax_length = 1.0\ninitial_step = 0.01\nmin_step = 1e-9\nmax_step = 0.05\nr_stop_rel = 0.001\ncoeff_stop = 1e-6\ndisc_stop = 1e-10"));
    assert_eq!(run(&["field", "-c", neg.to_str().unwrap()], Some(1)).status.code(), Some(3));

    let missing = dir.path().join("nope.toml");
    assert_eq!(run(&["point", "-c", missing.to_str().unwrap(), "1", "1"], None).status.code(), Some(3));

    let good = write_config(dir.path(), "good.toml", ELLIPSOID);
    let o = run(&["field", "-c", good.to_str().unwrap(), "--set", "grid=7"], None);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(run(&["frobnicate"], None).status.code(), Some(3));
    assert_eq!(run(&["--help"], None).status.code(), Some(0));
    let o = run(&["field", "-c", good.to_str().unwrap()], Some(1));
    assert_eq!(o.status.code(), Some(0));
    let env_bad = std::process::Command::new(common::BIN)
        .args(["field", "-c", good.to_str().unwrap(), "--set", "grid.nu=2", "--set", "grid.nv=2"])
        .env("SPACELIKE_SURF_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(env_bad.status.code(), Some(3));
}

#[test]
fn point_reports() {
    let dir = tempfile::tempdir().unwrap();
    let sphere = write_config(dir.path(), "s.toml", SPHERE);
    let o = run(&["point", "-c", sphere.to_str().unwrap(), "1.2", "2.0"], None);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["class"], "inflection_lightlike");
    assert_eq!(v["ellipse"]["case"], "point");

    let ell = write_config(dir.path(), "e.toml", &format!("{ELLIPSOID}\neps = 0.05"));
    let o = run(&["point", "-c", ell.to_str().unwrap(), "1.3", "2.0"], None);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["class"], "regular");
    let d = &v["directions"];
    let angle = d["asymptotic_angle"].as_f64();
    assert!(angle.is_some_and(f64::is_finite) || d["note"] == "no real asymptotic directions", "{d}");

    // strongly tilted ellipsoid: the metric degenerates here
    let tilted = write_config(dir.path(), "t.toml", &format!("{ELLIPSOID}\neps = 0.5"));
    let o = run(&["point", "-c", tilted.to_str().unwrap(), "0.5561061769059863", "0.1234"], None);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
    assert!(stderr(&o).contains("not spacelike"));

    let g = write_config(dir.path(), "g.toml", GRAPH);
    let o = run(&["point", "-c", g.to_str().unwrap(), "--", "-0.3", "0.1"], None);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["ellipse"]["origin"], "inside");
    assert_eq!(v["directions"]["note"], "no real asymptotic directions");
    assert!(v["directions"]["asymptotic_angle"].is_null());
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn field_grids() {
    let dir = tempfile::tempdir().unwrap();
    let torus = write_config(dir.path(), "t.toml", &format!("{TORUS}\n[grid]\nnu = 64\nnv = 64"));
    let o = run(&["field", "-c", torus.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(dir.path().join("out/field.csv")).unwrap();
    assert_eq!(text.lines().next().unwrap(), "u,v,H1,H2,H_norm2,K,K_N,Delta,class,a2,b2");
    assert_eq!(csv_rows(&text).len(), 4096);

    let first = text.clone();
    run(&["field", "-c", torus.to_str().unwrap()], Some(1));
    assert_eq!(fs::read_to_string(dir.path().join("out/field.csv")).unwrap(), first);

    let hyp = write_config(dir.path(), "h.toml", &format!("{HYPERBOLIC}\n[grid]\nnu = 64\nnv = 64"));
    assert_eq!(run(&["field", "-c", hyp.to_str().unwrap()], None).status.code(), Some(0));
    let rows = csv_rows(&fs::read_to_string(dir.path().join("out/field.csv")).unwrap());
    assert_eq!(rows.len(), 4096);
    for r in &rows {
        let k_n: f64 = r[6].parse().unwrap();
        assert!(k_n.abs() <= 1e-8, "{r:?}");
        // shortest round-trip text parses back to itself
        assert_eq!(format!("{k_n:?}"), r[6]);
    }
}

#[test]
fn umbilic_reports() {
    let dir = tempfile::tempdir().unwrap();
    let read = || -> Value { serde_json::from_str(&fs::read_to_string(dir.path().join("out/umbilics.json")).unwrap()).unwrap() };

    let ell = write_config(dir.path(), "e.toml", &format!("{ELLIPSOID}\n[grid]\nnu = 128\nnv = 128"));
    let o = run(&["umbilics", "-c", ell.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("index sum 2.0"));
    let v = read();
    let ph = &v["poincare_hopf"];
    assert_eq!(ph["status"], "ok");
    assert_eq!(ph["count"], 4);
    assert_eq!(ph["index_sum"], 2.0);
    assert!(ph["umbilics"].as_array().unwrap().iter().all(|u| u["index"] == 0.5));
    let csv = fs::read_to_string(dir.path().join("out/umbilics.csv")).unwrap();
    assert_eq!(csv.lines().count(), 5);

    let torus = write_config(dir.path(), "t.toml", &format!("{TORUS}\n[grid]\nnu = 64\nnv = 64"));
    run(&["umbilics", "-c", torus.to_str().unwrap()], None);
    let v = read();
    assert_eq!(v["poincare_hopf"]["count"], 0);
    assert_eq!(v["poincare_hopf"]["index_sum"], 0.0);

    let sphere = write_config(dir.path(), "s.toml", &format!("{SPHERE}\n[grid]\nnu = 32\nnv = 32"));
    assert_eq!(run(&["umbilics", "-c", sphere.to_str().unwrap()], None).status.code(), Some(0));
    let v = read();
    assert_eq!(v["poincare_hopf"]["status"], "degenerate");
    assert!(v["charts"].as_array().unwrap().iter().all(|c| c["degenerate"] == true));

    // open chart: no Poincaré–Hopf section
    let g = write_config(dir.path(), "g.toml", &format!("{GRAPH}\n[field]\nnormal = \"null\"\nn1 = 1.0\nn2 = 0.0\n[grid]\nnu = 40\nnv = 40"));
    run(&["umbilics", "-c", g.to_str().unwrap()], None);
    let v = read();
    assert!(v["poincare_hopf"].is_null());
    assert_eq!(v["charts"][0]["umbilics"].as_array().unwrap().len(), 1);
}

fn read_curve(path: &std::path::Path) -> Vec<(f64, f64)> {
    csv_rows(&fs::read_to_string(path).unwrap())
        .iter()
        .map(|r| (r[0].parse().unwrap(), r[1].parse().unwrap()))
        .collect()
}

#[test]
fn line_tracing() {
    let dir = tempfile::tempdir().unwrap();
    let seeds = "[[seeds]]\nu = 1.0\nv = 0.5\nbranch = \"first\"\n\n[[seeds]]\nu = 1.0\nv = 0.5\nbranch = \"second\"\n";
    let torus = write_config(dir.path(), "t.toml", &format!("{TORUS}\n[grid]\nnu = 32\nnv = 32\n\n{seeds}"));
    let o = run(&["lines", "-c", torus.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let index: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("out/lines.json")).unwrap()).unwrap();
    assert_eq!(index["kind"], "principal");
    // coordinate curves: one coordinate is constant along each line
    let mut constant = Vec::new();
    for k in 0..2 {
        let pts = read_curve(&dir.path().join(format!("out/line_{k:03}.csv")));
        assert!(pts.len() > 10);
        let du = pts.iter().map(|p| (p.0 - 1.0).abs()).fold(0.0, f64::max);
        let dv = pts.iter().map(|p| (p.1 - 0.5).abs()).fold(0.0, f64::max);
        assert!(du.min(dv) < 1e-8, "{du} {dv}");
        constant.push(du < dv);
        assert_eq!(index["lines"][k]["forward"]["stop"], "max_length");
        assert_eq!(index["lines"][k]["backward"]["stop"], "max_length");
    }
    assert_ne!(constant[0], constant[1]);

    let g = write_config(
        dir.path(),
        "g.toml",
        &format!("{GRAPH}\n[field]\nkind = \"asymptotic\"\n\n[[seeds]]\nu = -0.3\nv = 0.1\n\n[[seeds]]\nu = 0.3\nv = 0.2\n"),
    );
    fs::remove_dir_all(dir.path().join("out")).unwrap();
    let o = run(&["lines", "-c", g.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("no real directions"), "{}", stderr(&o));
    let index: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("out/lines.json")).unwrap()).unwrap();
    assert!(index["lines"][0]["file"].is_null());
    assert!(index["lines"][0]["error"].as_str().unwrap().contains("no real directions"));
    assert_eq!(index["lines"][1]["file"], "line_001.csv");
    assert!(!dir.path().join("out/line_000.csv").exists());
    assert!(dir.path().join("out/line_001.csv").exists());

    fs::remove_dir_all(dir.path().join("out")).unwrap();
    let empty = write_config(dir.path(), "e.toml", TORUS);
    let o = run(&["lines", "-c", empty.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(!dir.path().join("out").exists());
}

#[test]
fn selftest_quick() {
    let o = run(&["selftest", "--quick"], None);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("11 suites, 0 failed"));
    assert!(text.contains("samples=100 "));

    let other = run(&["selftest", "--quick", "--seed", "99"], None);
    assert_eq!(other.status.code(), Some(0));
    let line = |t: &str| t.lines().find(|l| l.starts_with("ellipse_equation")).unwrap().to_string();
    assert_ne!(line(&text), line(&stdout(&other)));
}
