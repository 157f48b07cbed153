use std::process::{Command, Output};

use serde_json::Value;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modp-satake"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn verify_basic_even_over_f25() {
    let out = cli(&["verify", "--p", "5", "--n", "2", "--zeta", "basic-even"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["pass"], true);
    assert!(v["points"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["pass"] == true));
    let first = &v["points"][0];
    for key in ["point", "case", "lhs", "rhs", "pass"] {
        assert!(first.get(key).is_some(), "{key}");
    }
}

#[test]
fn verify_is_byte_identical() {
    let args = ["verify", "--p", "7", "--zeta", "basic-odd", "--seed", "11"];
    assert_eq!(cli(&args).stdout, cli(&args).stdout);
}

#[test]
fn orbits_for_seven() {
    let v = json(&cli(&["orbits", "--p", "7"]));
    assert_eq!(v["total"], 21);
    assert_eq!(v["fibers"].as_array().unwrap().len(), 6);
}

#[test]
fn odd_exceptional_fiber_is_ramified() {
    let out = cli(&[
        "fibers",
        "--p",
        "5",
        "--zeta",
        "basic-odd",
        "--point",
        "ext-left:t=2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["cardinality"], 1);
    assert_eq!(v["ramified"], true);
}

#[test]
fn map_pieces_and_point_images() {
    let v = json(&cli(&["map", "--p", "7", "--zeta", "basic-odd"]));
    let covers = v
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|d| d["pieces"].as_array().unwrap().clone())
        .filter(|p| p["formula"] == "y-plus-inverse")
        .count();
    assert_eq!(covers, 2);
    let v = json(&cli(&["map", "--p", "7", "--point", "comp-0:origin"]));
    assert!(v["image"].as_str().unwrap().starts_with("node-"));
}

#[test]
fn llc_at_a_node_is_supersingular() {
    let v = json(&cli(&["llc", "--p", "5", "--point", "node-1"]));
    assert_eq!(v["case"], "i");
    assert_eq!(v["block_type"], 1);
    assert_eq!(v["pass"], true);
}

#[test]
fn curve_dot_and_export() {
    let out = cli(&["curve", "--p", "7", "--format", "dot"]);
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .starts_with("graph chain {"));
    let dir = std::env::temp_dir().join(format!("modp-satake-export-{}", std::process::id()));
    let out = cli(&[
        "export",
        "--p",
        "5",
        "--zeta",
        "basic-odd",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    for f in [
        "satake.json",
        "curve.json",
        "curve.dot",
        "map.json",
        "config.json",
    ] {
        assert!(dir.join(f).exists(), "{f}");
    }
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| cli(args).status.code();
    assert_eq!(code(&["fibers", "--point", "node-7"]), Some(3));
    assert_eq!(code(&["fibers", "--point", "int-1:x=1"]), Some(3));
    assert_eq!(
        code(&["map", "--zeta", "basic-even", "--curve-zeta", "basic-odd"]),
        Some(4)
    );
    assert_eq!(code(&["orbits", "--p", "3"]), Some(5));
    assert_eq!(code(&["satake", "--p", "15"]), Some(5));
    assert_eq!(code(&["bogus"]), Some(2));
    assert_eq!(code(&["satake", "--zeta", "weird"]), Some(2));
    assert_eq!(code(&["--help"]), Some(0));
}
