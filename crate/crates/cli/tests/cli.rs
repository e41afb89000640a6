use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toric-fano"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = run(&full);
    let v = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (out.status.code().expect("exit code"), v)
}

fn path(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

#[test]
fn birkhoff_planes() {
    let (code, v) = json(&["analyze", &path("birkhoff.json"), "--k", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    let section = &v["sections"][0];
    assert_eq!(section["k"], 2);
    assert_eq!(section["components"].as_array().unwrap().len(), 15);
    assert_eq!(section["connected"], true);
    assert_eq!(section["connected_components"], 1);
}

#[test]
fn square_rulings() {
    let (code, v) = json(&["analyze", &path("square.txt"), "--k", "1"]);
    assert_eq!(code, 0);
    let section = &v["sections"][0];
    assert_eq!(section["components"].as_array().unwrap().len(), 2);
    assert_eq!(section["connected_components"], 2);
    for c in section["components"].as_array().unwrap() {
        assert_eq!(c["dimension"], 1);
    }
}

#[test]
fn plane_in_plane() {
    let (code, v) = json(&["analyze", &path("triangle.txt"), "--k", "2"]);
    assert_eq!(code, 0);
    let comps = v["sections"][0]["components"].as_array().unwrap();
    assert_eq!(comps.len(), 1);
    assert_eq!(comps[0]["dimension"], 0);
}

#[test]
fn default_ks_and_local_section() {
    let (code, v) = json(&["analyze", &path("double_line.json"), "--local"]);
    assert_eq!(code, 0);
    let ks: Vec<u64> = v["sections"].as_array().unwrap().iter().map(|s| s["k"].as_u64().unwrap()).collect();
    assert_eq!(ks, vec![1, 2]);
    let facets = v["local"]["facets"].as_array().unwrap();
    let bottom = facets.iter().find(|f| f["sigma"] == serde_json::json!([0, 1])).unwrap();
    assert_eq!(bottom["multiplicity"], 2);
}

#[test]
fn surface_fat_point() {
    let (code, v) = json(&["mult", &path("surface.json"), "--sigma", "0,2"]);
    assert_eq!(code, 0);
    assert_eq!(v["isolated"], false);
    assert_eq!(v["w"], 1);
    assert_eq!(v["basis"]["rays"], serde_json::json!([{"base": [0, 0], "direction": 0}]));
    assert_eq!(v["basis"]["finite_part"], serde_json::json!([[0, 1]]));
    assert_eq!(v["terms"][0]["case"], "case1");
    assert_eq!(v["multiplicity"], Value::Null);
}

#[test]
fn multiplicities() {
    let (_, v) = json(&["mult", &path("double_line.json"), "--sigma", "0,1"]);
    assert_eq!(v["multiplicity"], 2);
    assert_eq!(v["multiplicity_by_height"], 2);
    let (_, v) = json(&["mult", &path("simple_line.json"), "--sigma", "1,0"]);
    assert_eq!(v["multiplicity"], 1);
    assert_eq!(v["multiplicity_by_height"], 1);
}

#[test]
fn hypothesis_failures() {
    let (code, v) = json(&["mult", &path("surface.json"), "--sigma", "0,3"]);
    assert_eq!(code, 5);
    assert_eq!(v["error"]["kind"], "not_a_face");
    let (code, v) = json(&["mult", &path("surface.json"), "--sigma", "2,3"]);
    assert_eq!(code, 5);
    assert_eq!(v["error"]["kind"], "not_smooth");
    let (code, _) = json(&["mult", &path("surface.json"), "--sigma", "0,9"]);
    assert_eq!(code, 5);
}

#[test]
fn verify_passes() {
    for f in ["birkhoff.json", "surface.json", "square.txt"] {
        let (code, v) = json(&["verify", &path(f), "--trials", "5"]);
        assert_eq!(code, 0, "{f}: {v}");
        assert_eq!(v["passed"], true);
    }
}

#[test]
fn verify_catches_corrupted_fixture() {
    let (code, v) = json(&["verify", &path("corrupted_surface.json")]);
    assert_eq!(code, 6);
    assert_eq!(v["passed"], false);
    assert_eq!(v["failures"], serde_json::json!(["claimed_cayley"]));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["analyze", &path("malformed.json")]).status.code(), Some(2));
    assert_eq!(run(&["analyze", &path("missing.json")]).status.code(), Some(2));
    assert_eq!(run(&["analyze", &path("birkhoff.json"), "--max-points", "5"]).status.code(), Some(3));
    assert_eq!(run(&["analyze", &path("square.txt"), "--k", "0"]).status.code(), Some(4));
    assert_eq!(run(&["mult", &path("surface.json"), "--sigma", "a"]).status.code(), Some(2));
}

#[test]
fn deterministic_output() {
    let args = ["analyze", &path("birkhoff.json"), "--format", "json", "--local"];
    let a = run(&args).stdout;
    let b = run(&args).stdout;
    assert_eq!(a, b);
    let args = ["verify", &path("surface.json"), "--format", "json", "--seed", "11"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn text_carries_the_json_data() {
    let (_, v) = json(&["analyze", &path("birkhoff.json"), "--k", "2"]);
    let text = String::from_utf8(run(&["analyze", &path("birkhoff.json"), "--k", "2"]).stdout).unwrap();
    for c in v["sections"][0]["components"].as_array().unwrap() {
        assert!(text.contains(&format!("id: {}", c["id"].as_str().unwrap())));
    }
    assert!(text.contains("connected_components: 1"));
    assert!(text.starts_with("schema: 1\n"));
}
