use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

use gauss_dual::curves::{fermat_curve, random_curve};
use gauss_dual::gf::Gf;
use gauss_dual::io::curve_to_json;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gauss-dual"))
        .args(args)
        .env_remove("GAUSS_DUAL_FIELD_K")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("gauss-dual-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write_fermat(name: &str) -> PathBuf {
    let f = Gf::new(2, 8, 0).unwrap();
    let path = scratch(name);
    std::fs::write(&path, curve_to_json(&fermat_curve(&f, 2).unwrap())).unwrap();
    path
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("elapsed_ms");
    v
}

#[test]
fn fermat_emits_curve_and_closed_form_dual() {
    let out = run(&["fermat", "--q", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["curve"]["q"], 2);
    assert_eq!(v["curve"]["field"]["k"], 8);
    assert_eq!(v["dual"]["degree"], 21);
    assert_eq!(v["dual"]["method"], "closed-form");
    assert!(v["dual"]["H"].as_str().unwrap().contains("x0^21 x1^0 x2^0"));
}

#[test]
fn field_degree_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_gauss-dual"))
        .args(["fermat", "--q", "2"])
        .env("GAUSS_DUAL_FIELD_K", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["curve"]["field"]["k"], 4);
}

#[test]
fn theorem2_at_q2() {
    let out = run(&["verify", "theorem2", "--q", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["nodes"], 49);
    assert_eq!(v["specials"][0]["count"], 21);
    assert_eq!(v["specials"][0]["mu"], 12);
    assert_eq!(v["specials"][0]["r"], 1);
    assert_eq!(v["genus_dual"], 15);
    assert_eq!(v["pass"], true);
}

#[test]
fn theorem1_at_q2() {
    let out = run(&[
        "verify", "theorem1", "--q", "2", "--trials", "3", "--seed", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let trials = v["trials"].as_array().unwrap();
    assert_eq!(trials.len(), 3);
    for t in trials {
        let r = &t["report"];
        assert_eq!(r["dual_degree"], 21);
        assert_eq!(r["nodes"], 175);
        assert_eq!(r["flexes"], 105);
        assert_eq!(r["hyperflexes"], 0);
        assert_eq!(t["pass"], true);
    }
}

#[test]
fn output_is_deterministic_across_job_counts() {
    let a = run(&[
        "--jobs", "1", "verify", "theorem1", "--q", "2", "--trials", "1", "--seed", "9",
    ]);
    let b = run(&[
        "--jobs", "3", "verify", "theorem1", "--q", "2", "--trials", "1", "--seed", "9",
    ]);
    assert_eq!(without_timing(json(&a)), without_timing(json(&b)));
}

#[test]
fn dual_and_census_of_a_curve_file() {
    let path = write_fermat("fermat.json");
    let p = path.to_str().unwrap();
    let out = run(&["dual", "--in", p, "--degree", "21"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["dual"]["degree"], 21);
    assert_eq!(v["dual"]["method"], "interpolation");
    assert_eq!(v["checks"]["vanishing"], true);

    let out = run(&["census", "--in", p]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["nodes"], 49);
    assert_eq!(v["other_singular_points"], 21);
    assert_eq!(v["genus_dual"], 15);
}

#[test]
fn flexes_of_a_random_member() {
    let f = Gf::new(2, 8, 0).unwrap();
    let (c, _) = random_curve(&f, 2, 1).unwrap();
    let path = scratch("random.json");
    std::fs::write(&path, curve_to_json(&c)).unwrap();
    let out = run(&["flexes", "--in", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["flex_count"], 105);
    assert_eq!(v["hyperflex_count"], 0);
}

#[test]
fn ballico_hefez_nodes() {
    let v = json(&run(&["bh", "--q", "2"]));
    assert_eq!(v["nodes_off_triangle"], 1);
    let v = json(&run(&["bh", "--q", "3"]));
    assert_eq!(v["nodes_off_triangle"], 3);
}

#[test]
fn out_flag_writes_a_file() {
    let path = scratch("bh.json");
    let out = run(&["--out", path.to_str().unwrap(), "bh", "--q", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["schema"], 1);
}

#[test]
fn malformed_input_exits_2() {
    let path = write_fermat("short.json");
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    v["a"].as_array_mut().unwrap().pop();
    std::fs::write(&path, v.to_string()).unwrap();
    let out = run(&["census", "--in", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(json(&out)["error"].as_str().unwrap().contains("a:"));

    assert_eq!(
        run(&["dual", "--in", "/nonexistent/curve.json"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["fermat", "--q", "6"]).status.code(), Some(2));
    assert_eq!(run(&["fermat"]).status.code(), Some(2));
}
