use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cliquespec"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}\nstdout: {}\nstderr: {}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const K222_TRIANGLES: &str =
    r#"{"kind":"partition","cliques":[[0,2,4],[0,3,5],[1,2,5],[1,3,4]],"provenance":"four triangles"}"#;

#[test]
fn analyze_k222_with_triangle_partition() {
    let dir = tempfile::tempdir().unwrap();
    let cover = write(dir.path(), "k222.json", K222_TRIANGLES);
    let out = run(&["analyze", "--family", "multipartite:2,2,2", "--partition", &format!("file:{cover}")]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let r = json(&out);
    assert_eq!(r["checks_pass"], true);
    let spec: Vec<f64> =
        r["result"]["report"]["adjacency_spectrum"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    let expected = [4.0, 0.0, 0.0, 0.0, -2.0, -2.0];
    for (a, b) in spec.iter().zip(expected) {
        assert!((a - b).abs() < 1e-8, "{spec:?}");
    }
    assert_eq!(r["result"]["failed_bounds"].as_array().unwrap().len(), 0);
    assert_eq!(r["result"]["report"]["cover"]["k"], 4);
    assert_eq!(r["config"]["command"], "analyze");
    assert_eq!(r["config"]["tolerances"]["equality"], 1e-7);
    assert!(r["version"].is_string());
}

#[test]
fn graph_input_formats() {
    let dir = tempfile::tempdir().unwrap();
    let el = write(dir.path(), "c5.txt", "# five cycle\nn 5\n0 1\n1 2\n2 3\n3 4\n4 0\n");
    let a = json(&run(&["energy", "--input", &el]));
    let g6 = write(dir.path(), "c5.g6", &format!("{}\n", a["result"]["graph"]["graph6"].as_str().unwrap()));
    let b = json(&run(&["energy", "--input", &g6, "--format", "graph6"]));
    assert_eq!(a["result"]["energies"], b["result"]["energies"]);
    let e = a["result"]["energies"]["graph"].as_f64().unwrap();
    // eigenvalues 2, 2cos(2π/5) twice, 2cos(4π/5) twice
    assert!((e - (2.0 + 2.0 * 5f64.sqrt())).abs() < 1e-9, "{e}");
}

#[test]
fn certify_prism_s3() {
    let out = run(&["certify", "prism", "--s", "3"]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert_eq!(r["result"]["verified"], true);
    assert_eq!(r["result"]["has_ssp"], true);
    assert_eq!(r["result"]["certificate"]["c"], 5.0);
}

#[test]
fn enumerate_seven_four() {
    let out = run(&["enumerate", "--n", "7", "--m", "4"]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert_eq!(r["result"]["count"], 10);
    assert_eq!(r["result"]["graph6"].as_array().unwrap().len(), 10);
}

#[test]
fn partition_modes() {
    let exact = json(&run(&["partition", "--family", "multipartite:2,2,2"]));
    assert_eq!(exact["result"]["k"], 4);
    assert_eq!(exact["result"]["scan"]["complete"], true);
    let edges = json(&run(&["partition", "--family", "multipartite:2,2,2", "--partition", "edges"]));
    assert_eq!(edges["result"]["k"], 12);
    let greedy = json(&run(&["partition", "--family", "multipartite:2,2,2", "--partition", "greedy", "--seed", "3"]));
    assert!(greedy["result"]["k"].as_u64().unwrap() >= 4);
}

#[test]
fn ssp_on_matrix_and_certificate_files() {
    let dir = tempfile::tempdir().unwrap();
    let ident = write(dir.path(), "i3.txt", "1 0 0\n0 1 0\n0 0 1\n");
    let out = run(&["ssp", "--input", &ident]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert_eq!(r["result"]["ssp"]["has_ssp"], false);
    assert_eq!(r["result"]["ssp"]["kernel_dimension"], 3);

    let cert = dir.path().join("prism.json");
    let out = run(&["certify", "prism", "--s", "4", "--out", cert.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let wrapped: Value = serde_json::from_str(&fs::read_to_string(&cert).unwrap()).unwrap();
    let cert_only = write(dir.path(), "cert.json", &wrapped["result"]["certificate"].to_string());
    let r = json(&run(&["ssp", "--input", &cert_only]));
    assert_eq!(r["result"]["pattern_from_certificate"], true);
    assert_eq!(r["result"]["ssp"]["has_ssp"], true);
}

#[test]
fn reports_are_reproducible_and_metadata_is_separate() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = run(&["analyze", "--family", "cycle:6", "--partition", "greedy", "--out", p.to_str().unwrap()]);
        assert_eq!(code(&out), 0);
    }
    let ta = fs::read_to_string(&a).unwrap().replace(a.to_str().unwrap(), "OUT");
    let tb = fs::read_to_string(&b).unwrap().replace(b.to_str().unwrap(), "OUT");
    assert_eq!(ta, tb);
    let meta: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("a.json.meta.json")).unwrap()).unwrap();
    assert!(meta["generated_unix"].as_u64().unwrap() > 0);
    assert!(!ta.contains("generated_unix"));
}

#[test]
fn markdown_renders_the_json_report() {
    let out = run(&["analyze", "--family", "complete:4", "--emit", "markdown"]);
    assert_eq!(code(&out), 0);
    let md = String::from_utf8(out.stdout).unwrap();
    assert!(md.starts_with("# cliquespec analyze"));
    assert!(md.contains("- checks pass: true"));
    assert!(md.contains("| theorem_id |"));
    assert!(md.contains("- adjacency_spectrum: [3, -1, -1, -1]"));
}

#[test]
fn failing_bound_exits_two_and_still_writes() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("r.json");
    // demanding slack ≥ 1 breaks every tight inequality
    let out = run(&["analyze", "--family", "complete:5", "--tol", "inequality_slack=-1", "--out", p.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let r: Value = serde_json::from_str(&fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(r["checks_pass"], false);
    assert!(!r["result"]["failed_bounds"].as_array().unwrap().is_empty());
}

#[test]
fn failed_certificate_exits_two() {
    let out = run(&["certify", "prism", "--s", "3", "--tol", "gram=-1"]);
    assert_eq!(code(&out), 2);
    assert_eq!(json(&out)["result"]["verified"], false);
}

#[test]
fn usage_and_input_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "n 3\n0 0\n");
    let cases: Vec<Vec<String>> = vec![
        vec!["frobnicate".into()],
        vec!["analyze".into()],
        vec!["analyze".into(), "--input".into(), "/nonexistent/graph.txt".into()],
        vec!["analyze".into(), "--input".into(), bad],
        vec!["analyze".into(), "--family".into(), "wheel:5".into()],
        vec!["analyze".into(), "--family".into(), "cycle:5".into(), "--tol".into(), "bogus=1".into()],
        vec!["analyze".into(), "--family".into(), "cycle:5".into(), "--partition".into(), "best".into()],
        vec!["analyze".into(), "--family".into(), "cycle:13".into()],
        vec!["certify".into(), "prism".into()],
        vec!["certify".into(), "dodecahedron".into()],
        vec!["conjecture".into(), "--n".into(), "6".into()],
        vec!["enumerate".into(), "--n".into(), "7".into()],
    ];
    for args in cases {
        let out = bin().args(&args).output().unwrap();
        assert_eq!(code(&out), 1, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stderr.is_empty(), "{args:?} printed no message");
    }
    let guard = run(&["analyze", "--family", "cycle:13"]);
    assert!(String::from_utf8_lossy(&guard.stderr).contains("--partition greedy"));
}

#[test]
fn help_exits_zero() {
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["--version"])), 0);
}

#[test]
fn conjecture_seven() {
    let out = run(&["conjecture", "--n", "7"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let r = json(&out);
    assert_eq!(r["result"]["all_certified"], true);
    assert_eq!(r["result"]["classes_per_m"][4], serde_json::json!([4, 10]));
}
