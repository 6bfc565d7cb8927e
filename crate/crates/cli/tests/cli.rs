use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chambercoh"))
        .args(args)
        .env_remove("CHAMBERCOH_SEED")
        .output()
        .expect("spawn")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

fn path(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

#[test]
fn chambers_of_both_four_line_fixtures() {
    for arr in ["x4.arr", "b4.arr"] {
        let out = run(&["chambers", &path(arr)]);
        assert!(out.status.success());
        let doc = json(&out);
        assert_eq!(doc["schema"], 1);
        assert_eq!(doc["count"], 9);
        assert_eq!(doc["bounded"], 1);
        assert_eq!(doc["chambers"].as_array().unwrap().len(), 9);
    }
}

#[test]
fn text_table_has_a_row_per_chamber() {
    let out = run(&["chambers", &path("b4.arr"), "--text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.ends_with("9 chambers, 1 bounded\n"));
    assert_eq!(text.lines().count(), 11);
}

#[test]
fn malformed_input_exits_with_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.arr");
    std::fs::write(&bad, "1 0 0\n1 x 2\n").unwrap();
    let out = run(&["chambers", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));

    let out = run(&["chambers", dir.path().join("missing.arr").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn mono_length_must_match() {
    let dir = tempfile::tempdir().unwrap();
    let mono = dir.path().join("short.mono");
    std::fs::write(&mono, "m 5\nk 1 2\n").unwrap();
    let out = run(&["check", "cdo", &path("x4.arr"), "--mono", mono.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn determinant_check_passes_on_fixtures() {
    for arr in ["x4.arr", "b4.arr", "triangle.arr"] {
        let out = run(&["check", "det", &path(arr)]);
        assert!(out.status.success(), "{arr}");
        assert_eq!(json(&out)["determinant"]["matches"], true);
    }
}

#[test]
fn decomposable_counterexample() {
    let out = run(&["check", "main", &path("b4.arr"), "--mono", &path("b4_decomposable.mono")]);
    assert!(out.status.success());
    let doc = json(&out);
    assert_eq!(doc["decomposable"], true);
    assert_eq!(doc["verdict"]["iii"], true);
    assert_eq!(doc["verdict"]["i"], false);
    assert_eq!(doc["rank_to_uch2"], 3);
    assert_eq!(doc["violated_edges_at_infinity"], serde_json::json!(["H_inf"]));
}

#[test]
fn vanishing_under_condition_at_infinity() {
    let out = run(&["check", "cdo", &path("x4.arr"), "--mono", &path("x4_generic.mono")]);
    assert!(out.status.success());
    let doc = json(&out);
    assert_eq!(doc["condition_holds"], true);
    assert_eq!(doc["dims"], serde_json::json!([0, 0, 1]));
}

#[test]
fn trivial_local_system_gives_betti_numbers() {
    let out = run(&["cohomology", &path("x4.arr"), "--mono", &path("trivial4.mono")]);
    assert!(out.status.success());
    let doc = json(&out);
    let r = &doc["report"];
    assert_eq!([&r["h0"], &r["h1"], &r["h2"]].map(|v| v.as_u64().unwrap()), [1, 4, 4]);
}

#[test]
fn cohomology_needs_a_mode() {
    let out = run(&["cohomology", &path("x4.arr")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn symbolic_complex_is_deterministic() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("timings");
        v
    };
    let args = ["complex", &path("x4.arr"), "--symbolic"];
    let a = strip(json(&run(&args)));
    let b = strip(json(&run(&args)));
    assert_eq!(a, b);
    assert_eq!(a["cochain_identity"], true);
    assert_eq!(a["shape"]["d1"], serde_json::json!([4, 4]));
}

#[test]
fn flag_choice_can_be_varied() {
    let first = json(&run(&["flag", &path("b4.arr")]));
    let second = json(&run(&["flag", &path("b4.arr"), "--nth", "1"]));
    assert_eq!(first["flag"]["slope"], "1/2");
    assert_ne!(first["flag"]["slope"], second["flag"]["slope"]);
    assert_eq!(first["decomposition"]["counts"], second["decomposition"]["counts"]);
}

#[test]
fn render_draws_every_element() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("x4.svg");
    let out = run(&["render", &path("x4.arr"), "--svg", svg.to_str().unwrap()]);
    assert!(out.status.success());
    let doc = std::fs::read_to_string(&svg).unwrap();
    assert!(doc.starts_with("<svg"));
    assert_eq!(doc.matches(r#"class="hyperplane""#).count(), 4);
    assert_eq!(doc.matches(r#"class="line-label""#).count(), 4);
    assert_eq!(doc.matches(r#"class="vertex""#).count(), 3);
    assert_eq!(doc.matches(r#"class="chamber""#).count(), 9);
    assert_eq!(doc.matches(r#"class="flag""#).count(), 1);

    let out = run(&["render", &path("x4.arr"), "--svg", ""]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn small_suite_passes_and_honours_seed_env() {
    let out = run(&["suite", "--cases", "5", "--n-max", "5", "--assignments", "3", "--seed", "7"]);
    assert!(out.status.success());
    let doc = json(&out);
    assert_eq!(doc["summary"]["passed"], true);
    assert_eq!(doc["summary"]["seed"], 7);

    let out = Command::new(env!("CARGO_BIN_EXE_chambercoh"))
        .args(["suite", "--cases", "2", "--n-max", "4", "--assignments", "2"])
        .env("CHAMBERCOH_SEED", "99")
        .output()
        .unwrap();
    assert_eq!(json(&out)["summary"]["seed"], 99);
}
