use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const INTRO: &str =
    "vertex w1\nvertex w2\nvertex w3\nedge a w1 w1\nedge b w1 w2\nedge c w2 w3\nedge d w3 w2\n";

fn extgraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_extgraph"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, contents: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn loops(n: usize) -> String {
    let mut text = "vertex v\n".to_string();
    for _ in 0..n {
        text.push_str("edge v v\n");
    }
    text
}

fn extension(edges: &[&str]) -> String {
    let mut text = format!("{INTRO}addvertex v0\nsink v0\n");
    for w in edges {
        text.push_str(&format!("addedge {w} v0\n"));
    }
    text
}

#[test]
fn ext_of_cuntz_algebras() {
    let dir = TempDir::new().unwrap();
    for n in 2..=6 {
        let g = write(&dir, &format!("o{n}.txt"), &loops(n));
        let o = extgraph(&["ext", s(&g)]);
        assert!(o.status.success(), "{}", stderr(&o));
        let expected = if n == 2 {
            "0".to_string()
        } else {
            format!("Z/{}", n - 1)
        };
        assert_eq!(stdout(&o).lines().next().unwrap(), expected);
    }
}

#[test]
fn single_loop_violates_condition_l() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "loop.txt", &loops(1));
    let o = extgraph(&["ext", s(&g)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("Condition (L) fails"));
}

#[test]
fn parse_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "bad.txt", "vertex v\nedge v w\n");
    assert_eq!(extgraph(&["ext", s(&g)]).status.code(), Some(2));
    assert_eq!(
        extgraph(&["ext", "/nonexistent/file"]).status.code(),
        Some(2)
    );
    assert_eq!(extgraph(&["bogus"]).status.code(), Some(2));
}

#[test]
fn wojciech_of_two_extensions() {
    let dir = TempDir::new().unwrap();
    let e1 = write(&dir, "e1.txt", &extension(&["w1", "w2", "w3", "w3"]));
    let e2 = write(&dir, "e2.txt", &extension(&["w1", "w3"]));
    let o = extgraph(&["wojciech", s(&e1)]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next().unwrap(), "(1,1,2), essential");
    let o = extgraph(&["wojciech", s(&e2)]);
    assert_eq!(stdout(&o).lines().next().unwrap(), "(1,0,1), essential");
}

#[test]
fn non_essential_extension_warns() {
    let dir = TempDir::new().unwrap();
    // w1 never reaches w2
    let text = "vertex w1\nvertex w2\nedge w1 w1\nedge w1 w1\nedge w2 w2\nedge w2 w2\naddvertex v0\nsink v0\naddedge w2 v0\n";
    let e = write(&dir, "e.txt", text);
    let o = extgraph(&["wojciech", s(&e)]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next().unwrap(), "(0,1), non-essential");
    assert!(stderr(&o).contains("not essential"));
}

#[test]
fn sum_of_extensions() {
    let dir = TempDir::new().unwrap();
    let e1 = write(&dir, "e1.txt", &extension(&["w1", "w2", "w3", "w3"]));
    let e2 = write(&dir, "e2.txt", &extension(&["w1", "w3"]));
    let out = dir.path().join("sum.txt");
    let o = extgraph(&["sum", s(&e1), s(&e2), "-o", s(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("ω = (2,1,3)"));
    let o = extgraph(&["wojciech", s(&out)]);
    assert!(stdout(&o).starts_with("(2,1,3)"));

    // (E1 + E2) + E1 and E1 + (E2 + E1) agree with the vector sum
    let e21 = dir.path().join("e21.txt");
    assert!(extgraph(&["sum", s(&e2), s(&e1), "-o", s(&e21)])
        .status
        .success());
    let left = extgraph(&["sum", s(&out), s(&e1)]);
    let right = extgraph(&["sum", s(&e1), s(&e21)]);
    let first = |o: &Output| {
        stdout(o)
            .lines()
            .next()
            .unwrap()
            .split(' ')
            .nth(2)
            .unwrap()
            .to_string()
    };
    assert_eq!(first(&left), "(3,2,5)");
    assert_eq!(first(&right), "(3,2,5)");
}

#[test]
fn sum_of_different_bases_is_a_mismatch() {
    let dir = TempDir::new().unwrap();
    let e1 = write(&dir, "e1.txt", &extension(&["w1"]));
    let other = write(
        &dir,
        "o.txt",
        &format!("{}addvertex v0\nsink v0\naddedge v v0\n", loops(3)),
    );
    let o = extgraph(&["sum", s(&e1), s(&other)]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn essentialize_negative_class() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "o3.txt", &loops(3));
    let out = dir.path().join("e.txt");
    let o = extgraph(&["essentialize", s(&g), "--vector", "-5", "-o", s(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("ω = (7)"));
    let o = extgraph(&["wojciech", s(&out)]);
    assert_eq!(stdout(&o).lines().next().unwrap(), "(7), essential");

    let o = extgraph(&["essentialize", s(&g), "--vector", "1,2"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn counterexample_reports() {
    let o = extgraph(&["counterexample", "5"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("condition (L): yes"));
    assert!(text.contains("5 of 5 obstructions hold"));
    let o = extgraph(&["counterexample", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("1 of 1 obstructions hold"));
    assert!(stderr(&o).contains("Condition (L) fails"));
    let o = extgraph(&["counterexample", "30", "--format", "json"]);
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(
        doc["results"][0]["result"]["all_obstructed"],
        Value::Bool(true)
    );
}

#[test]
fn snf_emits_decomposition() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.txt", "3 3\n0 1 0\n0 -1 1\n0 1 -1\n");
    let o = extgraph(&["snf", s(&m)]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("S\n3 3\n1 0 0\n0 1 0\n0 0 0\n"));
    let out = dir.path().join("out");
    assert!(extgraph(&["snf", s(&m), "--out-dir", s(&out)])
        .status
        .success());
    assert_eq!(
        std::fs::read_to_string(out.join("S.txt")).unwrap(),
        "3 3\n1 0 0\n0 1 0\n0 0 0\n"
    );
    let o = extgraph(&["snf", s(&m), "-vv"]);
    assert!(stderr(&o).contains("snf: "));
    let two = write(&dir, "two.txt", "1 1\n2\n");
    assert!(stdout(&extgraph(&["snf", s(&two)])).contains("S\n1 1\n2\n"));
}

#[test]
fn validate_and_check() {
    let dir = TempDir::new().unwrap();
    let good = write(&dir, "good.txt", &extension(&["w1"]));
    assert!(extgraph(&["validate", s(&good)]).status.success());
    let looped = write(
        &dir,
        "bad.txt",
        &format!(
            "{INTRO}addvertex h\naddvertex v0\nsink v0\naddedge w1 h\naddedge h h\naddedge h v0\n"
        ),
    );
    let o = extgraph(&["validate", s(&looped)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("condition (2)"));

    let intro = write(&dir, "intro.txt", INTRO);
    let o = extgraph(&["check", s(&intro)]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("cycles without exit: w2 w3"));
}

#[test]
fn json_output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let files: Vec<PathBuf> = (2..=6)
        .map(|n| write(&dir, &format!("o{n}.txt"), &loops(n)))
        .collect();
    let mut args = vec!["ext", "--format", "json", "--jobs", "4"];
    args.extend(files.iter().map(|p| s(p)));
    let a = extgraph(&args);
    let b = extgraph(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let doc: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(doc["command"], "ext");
    assert_eq!(doc["inputs"].as_array().unwrap().len(), 5);
    assert_eq!(doc["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
    let groups: Vec<&str> = doc["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["result"]["group"].as_str().unwrap())
        .collect();
    assert_eq!(groups, ["0", "Z/2", "Z/3", "Z/4", "Z/5"]);
}

#[test]
fn json_records_failures_per_file() {
    let dir = TempDir::new().unwrap();
    let ok = write(&dir, "o3.txt", &loops(3));
    let bad = write(&dir, "loop.txt", &loops(1));
    let o = extgraph(&["ext", "--format", "json", s(&ok), s(&bad)]);
    assert_eq!(o.status.code(), Some(3));
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["results"][0]["ok"], Value::Bool(true));
    assert_eq!(doc["results"][1]["error"]["exit_code"], 3);
}

#[test]
fn dot_output_styles_added_part() {
    let dir = TempDir::new().unwrap();
    let e1 = write(&dir, "e1.txt", &extension(&["w1", "w2", "w3", "w3"]));
    let o = extgraph(&["wojciech", "--format", "dot", s(&e1)]);
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("dashed"));
}
