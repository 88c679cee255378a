use std::io::Write;
use std::process::{Command, Stdio};
use std::sync::Arc;

use qshape::format::{normalize_document, CliError};
use qshape::report::{Format, Report, Table};
use qshape_core::meshcat::MeshCategory;
use qshape_core::repmod::{bridge_homology_vertex, bridge_window, complex_to_representation, ChainComplex};
use qshape_core::matrix::MatrixOps;
use qshape_core::ring::Integers;
use serde_json::{json, Value};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut v = vec!["qshape".to_string()];
    v.extend(args.iter().map(|s| s.to_string()));
    qshape::run(&v)
}

fn fixture() -> String {
    format!("{}/examples/counter.json", env!("CARGO_MANIFEST_DIR"))
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qshape"))
}

/// The complex `Z --(2,0)--> Z^2` in degrees 1 and 0, through the bridge,
/// as a representation document over Z.
fn torsion_document() -> (Value, String) {
    let c = ChainComplex { lowest: 0, ranks: vec![2, 1], boundaries: vec![Integers.int_matrix(2, 1, &[2, 0])] };
    let (lo, hi) = bridge_window(c.lowest, c.highest());
    let cat = Arc::new(MeshCategory::repetitive(2, lo, hi).unwrap());
    let x = complex_to_representation(&cat, &Integers, &c).unwrap();
    let mut doc = qshape::format::representation_to_json(&x);
    doc["category"] = json!({"flavor": "repetitive_an", "n": 2, "window": [lo, hi], "ring": "Z"});
    (doc, cat.quiver().vertex_name(&bridge_homology_vertex(0)))
}

fn write_temp(name: &str, v: &Value) -> String {
    let path = std::env::temp_dir().join(format!("qshape-test-{}-{name}.json", std::process::id()));
    std::fs::write(&path, serde_json::to_string(v).unwrap()).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn dims_prints_the_rank_table() {
    let (code, out, err) = run(&["dims", "--n", "5"]);
    assert_eq!(code, 0, "{err}");
    assert!(out.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["3", "1", "2", "3", "2", "1"]), "{out}");
}

#[test]
fn inverted_window_points_at_the_field() {
    let (code, _, err) = run(&["dims", "--flavor", "repetitive_an", "--n", "3", "--window", "2,-2"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error at \"/window\""), "{err}");
}

#[test]
fn unknown_ring_is_an_input_error() {
    let (code, _, err) = run(&["dims", "--n", "3", "--ring", "mod:6"]);
    assert_eq!(code, 1);
    assert!(err.contains("/ring"), "{err}");
}

#[test]
fn verification_failures_exit_with_two() {
    assert_eq!(CliError::Verification("x".into()).exit_code(), 2);
    assert_eq!(CliError::Core(qshape_core::Error::CrossCheck("x".into())).exit_code(), 2);
    assert_eq!(CliError::input("/n", "bad").exit_code(), 1);
}

#[test]
fn checks_succeed_on_builtins() {
    for args in [
        vec!["mult", "--n", "4"],
        vec!["serre-check", "--n", "4", "--ring", "mod:5"],
        vec!["oracle"],
        vec!["build", "--flavor", "repetitive_an", "--n", "2", "--window", "-2,2", "--format", "json"],
    ] {
        let (code, _, err) = run(&args);
        assert_eq!(code, 0, "{args:?}: {err}");
    }
}

#[test]
fn counterexample_demo() {
    let (code, out, err) = run(&["demo", "counterexample"]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("mH at 2@0(φ): iso; weak equivalence: NO"), "{out}");
}

#[test]
fn json_report_round_trips() {
    let (code, out, _) = run(&["weq", &fixture(), "--format", "json"]);
    assert_eq!(code, 0);
    let report = Report::parse(&out).unwrap();
    assert_eq!(report.verdicts.get("weak_equivalence").map(String::as_str), Some("no"), "{out}");
    assert_eq!(Report::parse(&report.render(Format::Json)).unwrap(), report);
}

#[test]
fn empty_report_renders_as_empty_object() {
    assert_eq!(Report::default().render(Format::Json).trim(), "{}");
    let mut r = Report::default();
    let mut t = Table::new(["a", "bb"]);
    t.push(["1", "2"]);
    r.tables.insert("t".into(), t);
    assert_eq!(Report::parse(&r.render(Format::Json)).unwrap(), r);
}

#[test]
fn seeded_demo_is_deterministic() {
    let a = run(&["demo", "chain-complex", "--random", "10", "--seed", "7"]);
    let b = run(&["demo", "chain-complex", "--random", "10", "--seed", "7"]);
    assert_eq!(a.0, 0);
    assert_eq!(a, b);
    assert!(a.1.contains("10/10 homology matches"));
}

#[test]
fn fixture_normal_form_is_stable() {
    let doc: Value = serde_json::from_str(qshape::commands::COUNTER_FIXTURE).unwrap();
    let once = normalize_document(&doc).unwrap();
    assert_eq!(normalize_document(&once).unwrap(), once);
}

#[test]
fn torsion_shows_in_first_homology() {
    let (doc, vertex) = torsion_document();
    let path = write_temp("torsion", &doc);
    let (code, out, err) = run(&["homology", &path, "--vertex", &vertex, "--max-degree", "1"]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains(&format!("H_1 at {vertex}: Z/2 ⊕ Z")), "{out}");
}

#[test]
fn degree_limit_is_enforced() {
    let (code, _, err) = run(&["homology", &fixture(), "--max-degree", "7"]);
    assert_eq!(code, 1);
    assert!(err.contains('7') && err.contains('6'), "{err}");
}

#[test]
fn max_degree_from_environment_and_flag() {
    let (doc, vertex) = torsion_document();
    let path = write_temp("env", &doc);
    let degrees = |out: &[u8]| String::from_utf8_lossy(out).lines().filter(|l| l.trim_start().starts_with("H_")).count();
    let env = binary().args(["homology", &path, "--vertex", &vertex]).env("QSHAPE_MAX_DEGREE", "3").output().unwrap();
    assert!(env.status.success());
    let flag =
        binary().args(["homology", &path, "--vertex", &vertex, "--max-degree", "1"]).env("QSHAPE_MAX_DEGREE", "3").output().unwrap();
    assert!(flag.status.success());
    // H_0..H_3 rows against H_0..H_1 rows, plus the summary line for H_1
    assert_eq!(degrees(&env.stdout), 5);
    assert_eq!(degrees(&flag.stdout), 3);
}

#[test]
fn reads_documents_from_stdin() {
    let mut child = binary().args(["validate", "-"]).stdin(Stdio::piped()).stdout(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(qshape::commands::COUNTER_FIXTURE.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("natural: yes"));
}

#[test]
fn broken_mesh_relation_is_located() {
    let doc = json!({
        "category": {"flavor": "double_an", "n": 2, "ring": "Z"},
        "values": {"1": 1, "2": 1},
        "arrows": {"a1": [["1"]], "a1*": [["1"]]}
    });
    let path = write_temp("broken", &doc);
    let (code, _, err) = run(&["validate", &path]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error at \"/arrows"), "{err}");
}

#[test]
fn output_flag_writes_a_file() {
    let path = std::env::temp_dir().join(format!("qshape-test-{}-out.json", std::process::id()));
    let p = path.to_string_lossy().into_owned();
    let (code, out, _) = run(&["dims", "--n", "3", "--format", "json", "--output", &p]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    assert!(Report::parse(&std::fs::read_to_string(&path).unwrap()).is_ok());
}
