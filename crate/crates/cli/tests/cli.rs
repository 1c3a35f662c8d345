use std::path::PathBuf;

use mixgraph_cli::run;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["mixgraph"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn graph_file(name: &str, text: &str) -> (tempfile::TempDir, PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    (dir, path)
}

#[test]
fn census_table_and_csv() {
    let (code, out, _) = invoke(&["census", "--min-n", "3", "--max-n", "4", "--exact"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "n  M(n)  S(n)     f(n)     S/M\n\
         3    16    10  6.25e-1   10/16\n\
         4   218    70  3.21e-1  70/218\n"
    );
    let (code, out, _) = invoke(&["census", "--min-n", "1", "--max-n", "2", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "n,mixed_count,selfconverse_count,fraction_exact,fraction\n1,1,1,1/1,1.00e0\n2,3,3,3/3,1.00e0\n"
    );
}

#[test]
fn census_rejects_bad_ranges_before_computing() {
    let (code, _, err) = invoke(&["census", "--min-n", "5", "--max-n", "3"]);
    assert_eq!(code, 1);
    assert!(err.contains("greater than"));
    let (code, _, err) = invoke(&["census", "--min-n", "3", "--max-n", "65"]);
    assert_eq!(code, 1);
    assert!(err.contains("limit 64"));
    let (code, _, _) = invoke(&["census", "--min-n", "3", "--max-n", "12", "--limit", "10"]);
    assert_eq!(code, 1);
}

#[test]
fn oracle_subcommand() {
    let (code, out, _) = invoke(&["oracle", "--n", "3", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "n,mixed_count,selfconverse_count,fraction_exact,fraction,labeled_total,labeled_selfconverse,labeled_fraction_exact\n\
         3,16,10,10/16,6.25e-1,64,40,40/64\n"
    );
    let (code, _, err) = invoke(&["oracle", "--n", "5"]);
    assert_eq!(code, 1);
    assert!(err.contains("opt-in"), "{err}");
}

#[test]
fn check_single_arc() {
    let (_dir, path) = graph_file("arc.txt", "n 2 e 0 a 1\nA 0 1\n");
    let (code, out, _) = invoke(&["check", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out, "self-converse: yes, witness (0 1)\n");
}

#[test]
fn check_multiple_records_and_json() {
    let (_dir, path) = graph_file("two.txt", "n 3 e 1 a 1\nA 0 1\nE 1 2\nn 3 e 0 a 0\n");
    let (code, out, _) = invoke(&["check", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "graph 0: self-converse: no\ngraph 1: self-converse: yes, witness ()\n"
    );

    let (_, out, _) = invoke(&[
        "check",
        "--input",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["graphs"][0]["self_converse"], false);
    assert_eq!(v["graphs"][1]["witness"], serde_json::json!([0, 1, 2]));
}

#[test]
fn malformed_graph_file_fails() {
    let (_dir, path) = graph_file("bad.txt", "n 2 e 0 a 2\nA 0 1\nA 1 0\n");
    let (code, out, err) = invoke(&["check", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("malformed graph file"), "{err}");
    let (code, _, err) = invoke(&["check", "--input", "/nonexistent/graph.txt"]);
    assert_eq!(code, 1);
    assert!(err.contains("cannot read"));
}

#[test]
fn spectrum_from_file_and_random() {
    let (_dir, path) = graph_file("cycle.txt", "n 3 e 0 a 3\nA 0 1\nA 1 2\nA 2 0\n");
    let (code, out, _) = invoke(&["spectrum", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "charpoly: [0, -3, 0, 1]\nconverse charpoly: [0, -3, 0, 1]\ncospectral with converse: yes\n"
    );

    let (code, out, _) = invoke(&[
        "spectrum", "--random", "--n", "6", "--seed", "9", "--format", "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["seed"], 9);
    assert_eq!(v["graphs"][0]["cospectral"], true);
    assert_eq!(v["graphs"][0]["charpoly"].as_array().unwrap().len(), 7);

    let (code, _, err) = invoke(&["spectrum", "--random", "--n", "40", "--seed", "1"]);
    assert_eq!(code, 1);
    assert!(err.contains("limit"), "{err}");
}

#[test]
fn mc_selfconverse_two_vertices() {
    let (code, out, _) = invoke(&[
        "mc",
        "selfconverse",
        "--n",
        "2",
        "--trials",
        "100",
        "--seed",
        "7",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["estimate"], 1.0);
    assert_eq!(v["config"]["seed"], 7);
    assert_eq!(v["config"]["p"], 0.5);
    assert_eq!(v["experiment"], "selfconverse");
}

#[test]
fn mc_table_echoes_seed() {
    let (code, out, _) = invoke(&[
        "mc",
        "asymmetry",
        "--n",
        "2",
        "--trials",
        "5",
        "--seed",
        "123",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("seed = 123"));
    assert!(out.contains("estimate: 0.000000"));
}

#[test]
fn mc_flag_validation() {
    let (code, _, err) = invoke(&["mc", "lemma1", "--n", "5", "--trials", "0", "--seed", "1"]);
    assert_eq!(code, 1);
    assert!(err.contains("trial budget"), "{err}");
    let (code, _, _) = invoke(&[
        "mc", "lemma1", "--n", "5", "--trials", "3", "--seed", "1", "--p", "0.5",
    ]);
    assert_eq!(code, 1);
    let (code, _, _) = invoke(&[
        "mc",
        "asymmetry",
        "--n",
        "5",
        "--trials",
        "3",
        "--seed",
        "1",
        "--epsilon",
        "2",
    ]);
    assert_eq!(code, 1);
    let (code, _, _) = invoke(&[
        "mc",
        "asymmetry",
        "--n",
        "5",
        "--trials",
        "3",
        "--seed",
        "1",
        "--workers",
        "0",
    ]);
    assert_eq!(code, 1);
}

#[test]
fn usage_errors_exit_two() {
    let (code, _, err) = invoke(&["census", "--min-n", "3", "--max-n", "4", "--bogus"]);
    assert_eq!(code, 2);
    assert!(err.contains("--bogus"));
    let (code, _, _) = invoke(&["mc", "nosuch", "--n", "3", "--trials", "1", "--seed", "1"]);
    assert_eq!(code, 2);
    let (code, _, _) = invoke(&["spectrum", "--random", "--n", "3"]);
    assert_eq!(code, 2);
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("census.json");
    let (code, out, _) = invoke(&[
        "census",
        "--min-n",
        "3",
        "--max-n",
        "3",
        "--format",
        "json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["command"], "census");
    assert_eq!(v["rows"][0]["fraction_exact"], "10/16");
}
