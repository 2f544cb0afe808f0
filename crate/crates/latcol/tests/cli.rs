use std::path::Path;
use std::process::{Command, Output};

use latcol::CatalogJson;

fn latcol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latcol"))
        .args(args)
        .env_remove("LATCOL_NODE_BUDGET")
        .output()
        .unwrap()
}

fn enumerate(dir: &Path, dim: usize, orbits: usize) -> String {
    let out = dir.join(format!("d{dim}n{orbits}.json"));
    let o = latcol(&["enumerate", "--dim", &dim.to_string(), "--orbits", &orbits.to_string(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    out.to_str().unwrap().to_string()
}

#[test]
fn enumerate_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = enumerate(dir.path(), 1, 2);
    let c = CatalogJson::read(Path::new(&path)).unwrap();
    assert_eq!(c.records.len(), 3);
    let o = latcol(&["verify", &path]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn tampered_catalog_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = enumerate(dir.path(), 2, 2);
    let mut c = CatalogJson::read(Path::new(&path)).unwrap();
    c.records[0].partition.colors[0] ^= 1;
    c.write(Path::new(&path)).unwrap();
    assert_eq!(latcol(&["verify", &path]).status.code(), Some(2));
}

#[test]
fn exhausted_budget_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.json");
    let o = Command::new(env!("CARGO_BIN_EXE_latcol"))
        .args(["enumerate", "--dim", "2", "--orbits", "2", "--out", out.to_str().unwrap()])
        .env("LATCOL_NODE_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(!out.exists());
}

#[test]
fn render_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = enumerate(dir.path(), 2, 2);
    let c = CatalogJson::read(Path::new(&path)).unwrap();
    let cert = &c.records[0].certificate;
    let svg = dir.path().join("p.svg");
    let o = latcol(&["render", "--catalog", &path, "--id", cert, "--window", "6", "--out", svg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg") || text.starts_with("<?xml"));
    assert_eq!(text.matches("<rect").count(), 36);

    let o = latcol(&["report", "--catalog", &path]);
    assert_eq!(o.status.code(), Some(0));
    let stdout = String::from_utf8(o.stdout).unwrap();
    assert!(stdout.starts_with("d = 2, n = 2, 9 classes"));
}

#[test]
fn long_census_needs_opt_in() {
    let o = latcol(&["transitive", "--dim", "4"]);
    assert_ne!(o.status.code(), Some(0));
}

#[test]
fn small_census() {
    let o = latcol(&["transitive", "--dim", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8(o.stdout).unwrap().contains("36"));
}
