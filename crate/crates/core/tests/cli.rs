use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use lensgraph::format::GraphFile;
use lensgraph::graph::sphere_graph;
use lensgraph::ktheory::KTheoryReport;
use serde_json::Value;

fn lensgraph<P: AsRef<std::ffi::OsStr>>(args: &[P]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lensgraph")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn write_gen(dir: &Path, name: &str, args: &[&str]) -> std::path::PathBuf {
    let path = dir.join(name);
    let mut all: Vec<&str> = args.to_vec();
    all.push("--out");
    all.push(path.to_str().unwrap());
    let out = lensgraph(&all);
    assert!(out.status.success(), "{}", stderr(&out));
    path
}

fn counts(path: &Path) -> (usize, usize) {
    let f = GraphFile::parse(&fs::read_to_string(path).unwrap()).unwrap();
    (f.graph.vertex_count(), f.graph.edge_count())
}

#[test]
fn gen_sphere_sizes() {
    let dir = tempfile::tempdir().unwrap();
    for (n, expected) in [(1, (1, 1)), (2, (2, 3)), (4, (4, 10))] {
        let path = write_gen(dir.path(), &format!("s{n}.json"), &["gen-sphere", "--n", &n.to_string()]);
        assert_eq!(counts(&path), expected, "n = {n}");
    }
    let out = lensgraph(&["gen-sphere", "--n", "0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn gen_sphere_to_stdout_round_trips() {
    let out = lensgraph(&["gen-sphere", "--n", "3"]);
    assert!(out.status.success());
    let file = GraphFile::parse(&stdout(&out)).unwrap();
    assert_eq!(file.graph, sphere_graph(3).unwrap());
    assert_eq!(file.labeling, None);
    assert_eq!(stdout(&out), format!("{}\n", file.to_json()));
}

#[test]
fn gen_lens_sizes_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_gen(dir.path(), "a.json", &["gen-lens", "--n", "2", "--p", "2", "--weights", "1,1"]);
    assert_eq!(counts(&a), (4, 6));
    let b = write_gen(dir.path(), "b.json", &["gen-lens", "--n", "3", "--p", "5", "--weights", "1,2,3"]);
    assert_eq!(counts(&b), (15, 30));
    let parsed = GraphFile::parse(&fs::read_to_string(&b).unwrap()).unwrap();
    assert_eq!(parsed.labeling.unwrap().modulus(), 5);

    let out = lensgraph(&["gen-lens", "--n", "2", "--p", "4", "--weights", "2,1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("weight 2 not coprime to 4"), "{}", stderr(&out));

    let out = lensgraph(&["gen-lens", "--n", "2", "--p", "3", "--weights", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(lensgraph(&["gen-sphere", "--n", "2", "--bogus"]).status.code(), Some(2));
    assert_eq!(lensgraph(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(lensgraph::<&str>(&[]).status.code(), Some(2));
}

#[test]
fn ktheory_reports() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_gen(dir.path(), "s3.json", &["gen-sphere", "--n", "3"]);
    let out = lensgraph(&["ktheory", path.to_str().unwrap()]);
    assert!(out.status.success());
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["K0"]["free_rank"], 1);
    assert_eq!(report["K1"]["free_rank"], 1);
    assert_eq!(report["K0"]["torsion"], serde_json::json!([]));
    let expected = KTheoryReport::for_graph(&sphere_graph(3).unwrap()).to_json();
    assert_eq!(stdout(&out), format!("{expected}\n"));
}

#[test]
fn check_gauge_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let l3 = write_gen(dir.path(), "l3.json", &["gen-sphere", "--n", "2"]);
    let out = lensgraph(&["check-gauge", l3.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["verdict"], "principal");

    let isolated = dir.path().join("isolated.json");
    fs::write(
        &isolated,
        r#"{"vertices": ["v1", "v2", "w"],
            "edges": [{"name": "e11", "source": "v1", "range": "v1"},
                      {"name": "e12", "source": "v1", "range": "v2"},
                      {"name": "e22", "source": "v2", "range": "v2"}]}"#,
    )
    .unwrap();
    let out = lensgraph(&["check-gauge", isolated.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["verdict"], "not_principal");
    assert_eq!(report["witness"], "w");

    let source = dir.path().join("source.json");
    fs::write(
        &source,
        r#"{"vertices": ["v1", "v2"],
            "edges": [{"name": "e", "source": "v1", "range": "v2"},
                      {"name": "f", "source": "v2", "range": "v2"}]}"#,
    )
    .unwrap();
    let out = lensgraph(&["check-gauge", source.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["verdict"], "inconclusive");
    assert_eq!(report["witness"], "v1");
}

#[test]
fn malformed_files_report_positions() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"vertices\": [\"v1\"],\n \"edges\": [oops]}").unwrap();
    let out = lensgraph(&["ktheory", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("line 2"), "{err}");
    assert!(err.contains("column"), "{err}");

    let dangling = dir.path().join("dangling.json");
    fs::write(&dangling, r#"{"vertices": ["a"], "edges": [{"name": "e", "source": "a", "range": "b"}]}"#).unwrap();
    let out = lensgraph(&["ktheory", dangling.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("\"b\""), "{}", stderr(&out));

    let missing = dir.path().join("missing.json");
    assert_eq!(lensgraph(&["ktheory", missing.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn certify_needs_labels() {
    let dir = tempfile::tempdir().unwrap();
    let l3 = write_gen(dir.path(), "l3.json", &["gen-sphere", "--n", "2"]);
    let out = lensgraph(&["certify", l3.to_str().unwrap(), "--max-len", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("labels"), "{}", stderr(&out));
}

#[test]
fn certify_lens_skew_product() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_gen(dir.path(), "lens.json", &["gen-lens", "--n", "2", "--p", "2", "--weights", "1,1"]);
    for jobs in ["1", "4"] {
        let out = lensgraph(&["certify", path.to_str().unwrap(), "--max-len", "2", "--jobs", jobs]);
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
        let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(report["verdict"], "principal");
        let targets = report["targets"].as_array().unwrap();
        assert_eq!(targets.len(), 8);
        assert!(targets.iter().all(|t| t["status"] == "certified"));
    }
    let serial = stdout(&lensgraph(&["certify", path.to_str().unwrap(), "--max-len", "2", "--jobs", "1"]));
    let parallel = stdout(&lensgraph(&["certify", path.to_str().unwrap(), "--max-len", "2", "--jobs", "3"]));
    assert_eq!(serial, parallel);
}

#[test]
fn certify_not_found_exit_5() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cycle.json");
    fs::write(
        &path,
        r#"{"vertices": ["a", "b"],
            "edges": [{"name": "f", "source": "a", "range": "b", "label": 0},
                      {"name": "g", "source": "b", "range": "a", "label": 0}],
            "modulus": 2}"#,
    )
    .unwrap();
    let out = lensgraph(&["certify", path.to_str().unwrap(), "--max-len", "4"]);
    assert_eq!(out.status.code(), Some(5));
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["verdict"], "incomplete");
    let missing = report["targets"].as_array().unwrap().iter().filter(|t| t["status"] == "not_found").count();
    assert_eq!(missing, 2);
}

#[test]
fn export_dot_line_counts() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_gen(dir.path(), "lens.json", &["gen-lens", "--n", "3", "--p", "5", "--weights", "1,2,3"]);
    let out = lensgraph(&["export-dot", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    let edges = text.lines().filter(|l| l.contains(" -> ")).count();
    let nodes = text.lines().filter(|l| l.trim_end().ends_with(';') && !l.contains(" -> ")).count();
    assert_eq!((nodes, edges), (15, 30));
}

#[test]
fn generated_files_reimport() {
    let dir = tempfile::tempdir().unwrap();
    for n in 1..=4 {
        let path = write_gen(dir.path(), &format!("s{n}.json"), &["gen-sphere", "--n", &n.to_string()]);
        let f = GraphFile::parse(&fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), format!("{}\n", f.to_json()));
    }
    let path = write_gen(dir.path(), "l.json", &["gen-lens", "--n", "2", "--p", "3", "--weights", "1,2"]);
    let text = fs::read_to_string(&path).unwrap();
    assert_eq!(text, format!("{}\n", GraphFile::parse(&text).unwrap().to_json()));
}
