use std::path::PathBuf;
use std::process::Command;

use cacti::action::{act, symbols, EvalPoint, SlotConvention};
use cacti::cacti::FmsElement;
use cacti::operad::{FreeOperad, FreeTerm, Payload};
use cacti::{q, DeltaPoint};
use cacti_cli::render::{lobe_centres, render_svg};
use cacti_cli::{read_cactus, run};
use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "fixtures", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["cacti"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = call(args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn one_label_gives_one_cell() {
    let v = json(&["cells", "--n", "1", "--m", "2"]);
    assert_eq!(v["cells"], serde_json::json!([["(1)"]]));
}

#[test]
fn two_point_space_is_a_circle() {
    let v = json(&["homology", "--n", "2", "--m", "2", "--oracle", "poset"]);
    assert_eq!(v["betti"], serde_json::json!([1, 1]));
    assert_eq!(v["fvector"], serde_json::json!([2, 2]));
    assert_eq!(v["oracle"]["agrees"], Value::Bool(true));
}

#[test]
fn poset_oracle_needs_m_two() {
    let (code, _, err) = call(&["homology", "--n", "2", "--m", "3", "--oracle", "poset"]);
    assert_eq!(code, 2);
    assert!(err.contains("m = 2"));
}

#[test]
fn symbolic_action_on_the_three_arc_fixture() {
    let v = json(&[
        "act",
        "--cactus",
        &fixture("lobes_121.json"),
        "--points",
        "1/4",
        "--symbolic",
    ]);
    let want = FreeTerm::evaluation(
        "a1",
        Payload::Delta(DeltaPoint::new(vec![q(1, 2)]).unwrap()),
    )
    .unwrap()
    .compose(1, &FreeTerm::mult(2))
    .unwrap()
    .compose(
        2,
        &FreeTerm::evaluation("a2", Payload::Delta(DeltaPoint::empty())).unwrap(),
    )
    .unwrap();
    assert_eq!(v["term"], Value::String(want.to_string()));
    assert_eq!(FreeTerm::from_json(&v["term_json"]).unwrap(), want);
    assert_eq!(v["census"]["special"], 1);
}

#[test]
fn numeric_action_matches_the_library() {
    // a1⟨1/4,1/2⟩(#1, a2⟨1/2⟩(#2)) with γ₁ = x(1−x), γ₂ = 2x(1−x):
    // (3/16, 1/4) ∘₂ (1/2) = (3/16, 1/4 + 1/2)
    let v = json(&[
        "act",
        "--cactus",
        &fixture("lobes_121.json"),
        "--points",
        "1/8,1/2",
        "--symbolic",
    ]);
    assert_eq!(v["term"], "a1⟨1/4,1/2⟩(#1, a2⟨1/2⟩(#2))");
    let v = json(&[
        "act",
        "--cactus",
        &fixture("lobes_121.json"),
        "--points",
        "1/8,1/2",
    ]);
    assert_eq!(v["value"], serde_json::json!(["3/16", "3/4"]));
}

#[test]
fn cyclic_action_runs() {
    let v = json(&[
        "act",
        "--cactus",
        &fixture("framed_three.json"),
        "--points",
        "1/2,0,1/3,1/3",
        "--mode",
        "cyclic",
        "--symbolic",
    ]);
    assert_eq!(v["degree"], 3);
    assert_eq!(v["census"]["lobes"], 3);
    let t = FreeTerm::from_json(&v["term_json"]).unwrap();
    assert_eq!(t.arity(), 3);
}

#[test]
fn compose_agrees_with_the_library() {
    let v = json(&[
        "compose",
        &fixture("multiplication.json"),
        &fixture("lobes_121.json"),
        "--slot",
        "2",
    ]);
    let got: FmsElement = serde_json::from_value(v).unwrap();
    let a = read_cactus(fixture("multiplication.json").as_ref()).unwrap();
    let b = read_cactus(fixture("lobes_121.json").as_ref()).unwrap();
    assert_eq!(got, a.compose(2, &b).unwrap());
}

#[test]
fn invalid_inputs_exit_with_two() {
    let (code, _, err) = call(&[
        "act",
        "--cactus",
        &fixture("lobes_1212.json"),
        "--points",
        "1/4",
    ]);
    assert_eq!(code, 2);
    assert!(
        err.contains("alternating 1,2 subsequence at positions [1, 2, 3, 4]"),
        "{err}"
    );
    assert_eq!(
        call(&[
            "act",
            "--cactus",
            &fixture("lobes_121.json"),
            "--points",
            "1/0"
        ])
        .0,
        2
    );
    assert_eq!(
        call(&[
            "act",
            "--cactus",
            &fixture("lobes_121.json"),
            "--points",
            "1/2,1/3"
        ])
        .0,
        2
    );
    assert_eq!(call(&["verify", "--suite", "nonsense"]).0, 2);
    assert_eq!(call(&["cells", "--n", "40"]).0, 2);
    assert_eq!(
        call(&[
            "compose",
            &fixture("lobes_121.json"),
            &fixture("lobes_121.json"),
            "--slot",
            "3"
        ])
        .0,
        2
    );
    assert_eq!(call(&["tree", "/nonexistent.json"]).0, 2);
}

#[test]
fn verify_is_deterministic() {
    let a = call(&[
        "verify",
        "--suite",
        "multiplication",
        "--seed",
        "7",
        "--samples",
        "5",
    ]);
    let b = call(&[
        "verify",
        "--suite",
        "multiplication",
        "--seed",
        "7",
        "--samples",
        "5",
    ]);
    assert_eq!(a.0, 0);
    assert_eq!(a, b);
    assert!(a.1.lines().all(|l| l.contains("PASS")));
}

#[test]
fn tree_in_dot() {
    let (code, out, _) = call(&["tree", &fixture("nested_four.json")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("digraph cactus {"));
    assert_eq!(out.matches("lobe ").count(), 4);
    assert_eq!(out.matches('•').count(), 3);
    let v = json(&["tree", &fixture("nested_four.json"), "--format", "json"]);
    assert_eq!(v["label"]["kind"], "lobe");
}

fn tangent(a: (usize, f64, f64, f64), b: (usize, f64, f64, f64)) -> bool {
    let d = ((a.1 - b.1).powi(2) + (a.2 - b.2).powi(2)).sqrt();
    (d - (a.3 + b.3)).abs() < 1e-9
}

#[test]
fn render_single_lobe() {
    let e = read_cactus(fixture("single_lobe.json").as_ref()).unwrap();
    let svg = render_svg(&e).unwrap();
    assert_eq!(svg.matches("<circle").count(), 2);
    assert_eq!(svg.matches("class=\"basepoint\"").count(), 1);
}

#[test]
fn render_two_tangent_lobes() {
    let e = read_cactus(fixture("lobes_121.json").as_ref()).unwrap();
    let c = lobe_centres(&e).unwrap();
    assert_eq!(c.len(), 2);
    assert!(tangent(c[0], c[1]));
    // lobe 1 carries the basepoint and sits at the origin's side
    assert!(c[0].2.abs() < c[1].2.abs() + c[0].3);
}

#[test]
fn render_nesting_follows_the_tree() {
    let e = read_cactus(fixture("nested_four.json").as_ref()).unwrap();
    let c = lobe_centres(&e).unwrap();
    for (x, y) in [(0, 1), (1, 2), (0, 3)] {
        assert!(tangent(c[x], c[y]), "lobes {} and {}", x + 1, y + 1);
    }
    assert!(!tangent(c[2], c[3]));
    let a = call(&["render", &fixture("nested_four.json")]);
    let b = call(&["render", &fixture("nested_four.json")]);
    assert_eq!(a.0, 0);
    assert_eq!(a, b);
}

#[test]
fn library_and_cli_agree_on_points() {
    let e = read_cactus(fixture("nested_four.json").as_ref()).unwrap();
    let p = EvalPoint::Plain(DeltaPoint::new(vec![q(1, 8), q(1, 2), q(1, 2)]).unwrap());
    let t = act(&FreeOperad, &e, &symbols(4), &p, SlotConvention::ExitPoint).unwrap();
    let v = json(&[
        "act",
        "--cactus",
        &fixture("nested_four.json"),
        "--points",
        "1/8,1/2,1/2",
        "--symbolic",
    ]);
    assert_eq!(v["term"], Value::String(t.to_string()));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_cacti");
    let ok = Command::new(bin)
        .args(["cells", "--n", "2"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = Command::new(bin).args(["cells"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{\"n\": 2, \"breaks\": [\"0\", \"1\"]").unwrap();
    let broken = Command::new(bin)
        .args(["render", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(broken.status.code(), Some(2));
}
