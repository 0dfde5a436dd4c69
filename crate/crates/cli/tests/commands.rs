use std::path::PathBuf;

use cellshell_cli::{run, Outcome};
use serde_json::Value;

fn corpus(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("../../corpus");
    p.push(format!("{name}.json"));
    p.display().to_string()
}

fn cellshell(args: &[&str]) -> Outcome {
    run(std::iter::once("cellshell").chain(args.iter().copied()))
}

fn json(o: &Outcome) -> Value {
    serde_json::from_str(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", o.stdout))
}

#[test]
fn decide_octahedron() {
    let o = cellshell(&["decide", "--in", &corpus("octahedron"), "--retries", "3"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v = json(&o);
    assert_eq!(v["verdict"], "SIMPLY_CONNECTED");
    assert!(v["certificate"]["removed"].as_array().is_some_and(|r| !r.is_empty()));
}

#[test]
fn decide_torus_is_negative() {
    let o = cellshell(&["decide", "--in", &corpus("csaszar-torus")]);
    assert_eq!(o.code, 1);
    let v = json(&o);
    assert_eq!(v["verdict"], "NOT_SIMPLY_CONNECTED_PER_PAPER");
    assert_eq!(v["oracle"]["betti"], serde_json::json!([1, 2, 1]));
    assert!(v["note"].as_str().unwrap().contains("b1 = 2"));
}

#[test]
fn decide_with_named_origin() {
    let o = cellshell(&["decide", "--in", &corpus("octahedron"), "--origin", "S"]);
    assert_eq!(o.code, 0);
    assert_eq!(json(&o)["attempts"][0]["origin"], serde_json::json!([0, 1]));
    let bad = cellshell(&["decide", "--in", &corpus("octahedron"), "--origin", "Q"]);
    assert_eq!(bad.code, 2);
}

#[test]
fn certificate_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("octa.cert.json");
    let cert = cert.to_str().unwrap();
    let o = cellshell(&["decide", "--in", &corpus("octahedron"), "--out", cert]);
    assert_eq!(json(&o)["certificate_path"], cert);
    let r = cellshell(&["replay", "--in", &corpus("octahedron"), "--cert", cert]);
    assert_eq!(r.code, 0);
    assert_eq!(json(&r)["valid"], true);
    // The same removals do not certify the tetrahedron.
    let r = cellshell(&["replay", "--in", &corpus("tetrahedron"), "--cert", cert]);
    assert_eq!(r.code, 1);
}

#[test]
fn fill_square_curve() {
    let o = cellshell(&["fill", "--in", &corpus("square-curve"), "--grid", "auto"]);
    assert_eq!(o.code, 0);
    let v = json(&o);
    assert_eq!(v["status"], "complete");
    assert_eq!(v["cell_count"], 1);
}

#[test]
fn fill_writes_the_tree() {
    let dir = tempfile::tempdir().unwrap();
    let tree = dir.path().join("tree.json");
    let o = cellshell(&["fill", "--in", &corpus("dumbbell-curve"), "--out", tree.to_str().unwrap()]);
    assert_eq!(o.code, 0);
    let t: Value = serde_json::from_str(&std::fs::read_to_string(&tree).unwrap()).unwrap();
    assert!(t["nodes"].as_array().unwrap().len() >= 2);
}

#[test]
fn fill_with_explicit_grid() {
    let o = cellshell(&["fill", "--in", &corpus("square-curve"), "--grid", "-1,-1:2,2"]);
    assert_eq!(o.code, 0);
    let o = cellshell(&["fill", "--in", &corpus("square-curve"), "--grid", "0,0:1,1"]);
    assert_eq!(o.code, 2);
}

#[test]
fn separate_octahedron_equator() {
    let o = cellshell(&["separate", "--in", &corpus("octahedron"), "--cycle-vertices", "a,b,c,d"]);
    assert_eq!(o.code, 0);
    assert_eq!(json(&o)["sizes"], serde_json::json!([4, 4]));
}

#[test]
fn validate_and_betti() {
    assert_eq!(cellshell(&["validate", "--in", &corpus("bowtie")]).code, 1);
    let o = cellshell(&["validate", "--in", &corpus("voxel-torus")]);
    assert_eq!(o.code, 0);
    assert_eq!(json(&o)["is_manifold"], true);
    let b = cellshell(&["betti", "--in", &corpus("three-sphere")]);
    assert_eq!(json(&b)["betti"], serde_json::json!([1, 0, 0, 1]));
}

#[test]
fn export_formats() {
    let o = cellshell(&["export", "--in", &corpus("octahedron")]);
    assert_eq!(o.code, 0);
    assert_eq!(o.stdout.lines().filter(|l| l.starts_with("f ")).count(), 8);
    let f = cellshell(&["export", "--in", &corpus("octahedron"), "--format", "json"]);
    let v = json(&f);
    assert_eq!(v["verdict"], "SPHERE_CERTIFIED");
    assert_eq!(v["frames"][0]["step"], 0);
}

#[test]
fn usage_and_input_errors_exit_two() {
    assert_eq!(cellshell(&["bogus"]).code, 2);
    assert_eq!(cellshell(&["decide"]).code, 2);
    assert_eq!(cellshell(&["betti", "--in", "/nonexistent.json"]).code, 2);
    let o = cellshell(&["decide", "--in", &corpus("hexagon-disk")]);
    assert_eq!(o.code, 2);
    assert!(o.stdout.is_empty());
    assert!(o.stderr.contains("boundary"));
}
