use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use kempe_core::coloring::{verify_trace, EdgeColoring, KempeTrace};
use kempe_core::graph::Graph;

struct Scratch(PathBuf);

impl Scratch {
    fn new(name: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("kempe-cli-{name}-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn file(&self, name: &str, text: &str) -> PathBuf {
        let p = self.0.join(name);
        fs::write(&p, text).unwrap();
        p
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.join(name)
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = fs::remove_dir_all(&self.0);
    }
}

fn kempe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kempe")).args(args).output().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const C6: &str = r#"{"n":6,"edges":[[0,1],[1,2],[2,3],[3,4],[4,5],[5,0]]}"#;
const C6_A: &str = r#"{"t":3,"colors":[1,2,1,2,1,2]}"#;
const C6_B: &str = r#"{"t":3,"colors":[2,1,2,1,2,1]}"#;

#[test]
fn transform_c6_then_verify() {
    let dir = Scratch::new("c6");
    let (g, a, b) = (dir.file("g.json", C6), dir.file("a.json", C6_A), dir.file("b.json", C6_B));
    let out = dir.path("trace.json");
    let run = kempe(&["transform", "--graph", s(&g), "--from", s(&a), "--to", s(&b), "--out", s(&out)]);
    assert_eq!(run.status.code(), Some(0), "{}", String::from_utf8_lossy(&run.stderr));

    let graph = Graph::from_json(C6).unwrap();
    let trace = KempeTrace::from_json(&fs::read_to_string(&out).unwrap()).unwrap();
    let from = EdgeColoring::from_json(C6_A).unwrap();
    let to = EdgeColoring::from_json(C6_B).unwrap();
    assert!(verify_trace(&graph, &from, &trace, &to).unwrap());

    let run = kempe(&["verify", "--graph", s(&g), "--from", s(&a), "--trace", s(&out), "--to", s(&b)]);
    assert_eq!(run.status.code(), Some(0));
}

#[test]
fn identical_colorings_give_empty_trace() {
    let dir = Scratch::new("same");
    let (g, a) = (dir.file("g.json", C6), dir.file("a.json", C6_A));
    let run = kempe(&["transform", "--graph", s(&g), "--from", s(&a), "--to", s(&a)]);
    assert_eq!(run.status.code(), Some(0));
    let trace = KempeTrace::from_json(&String::from_utf8(run.stdout).unwrap()).unwrap();
    assert!(trace.is_empty());
}

#[test]
fn diamond_reports_chord_witness() {
    let dir = Scratch::new("diamond");
    let g = dir.file("g.json", r#"{"n":4,"edges":[[0,1],[1,2],[2,3],[3,0],[0,2]]}"#);
    let a = dir.file("a.json", r#"{"t":4,"colors":[1,2,1,2,3]}"#);
    let run = kempe(&["transform", "--graph", s(&g), "--from", s(&a), "--to", s(&a)]);
    assert_eq!(run.status.code(), Some(2));
    let err = String::from_utf8(run.stderr).unwrap();
    assert!(err.contains("chord witness") && err.contains("\"chord\":4"), "{err}");
}

#[test]
fn odd_cycle_takes_the_doubling_path() {
    let dir = Scratch::new("c5");
    let g = dir.file("g.json", r#"{"n":5,"edges":[[0,1],[1,2],[2,3],[3,4],[4,0]]}"#);
    let a = dir.file("a.json", r#"{"t":4,"colors":[1,2,1,2,3]}"#);
    let b = dir.file("b.json", r#"{"t":4,"colors":[4,3,2,1,2]}"#);
    let out = dir.path("trace.json");
    let run = kempe(&["transform", "--graph", s(&g), "--from", s(&a), "--to", s(&b), "--out", s(&out)]);
    assert_eq!(run.status.code(), Some(0), "{}", String::from_utf8_lossy(&run.stderr));
    let run = kempe(&["verify", "--graph", s(&g), "--from", s(&a), "--trace", s(&out), "--to", s(&b)]);
    assert_eq!(run.status.code(), Some(0));
}

#[test]
fn improper_input_is_a_precondition_failure() {
    let dir = Scratch::new("improper");
    let (g, a) = (dir.file("g.json", C6), dir.file("a.json", r#"{"t":3,"colors":[1,1,2,1,2,3]}"#));
    let run = kempe(&["transform", "--graph", s(&g), "--from", s(&a), "--to", s(&a)]);
    assert_eq!(run.status.code(), Some(2));
}

#[test]
fn corrupted_and_truncated_traces_fail_verification() {
    let dir = Scratch::new("verify");
    let (g, a, b) = (dir.file("g.json", C6), dir.file("a.json", C6_A), dir.file("b.json", C6_B));
    // vertex 0 meets colors 1 and 2 but never color 3
    let corrupt = dir.file("bad.json", r#"{"steps":[{"c":1,"d":2,"anchor":0},{"c":3,"d":3,"anchor":0}]}"#);
    let run = kempe(&["verify", "--graph", s(&g), "--from", s(&a), "--trace", s(&corrupt), "--to", s(&a)]);
    assert_eq!(run.status.code(), Some(1));
    assert!(String::from_utf8(run.stderr).unwrap().contains("step 1"));

    let truncated = dir.file("short.json", r#"{"steps":[]}"#);
    let run = kempe(&["verify", "--graph", s(&g), "--from", s(&a), "--trace", s(&truncated), "--to", s(&b)]);
    assert_eq!(run.status.code(), Some(1));
    assert!(String::from_utf8(run.stderr).unwrap().contains("step 0"));
}

#[test]
fn generate_triangle_family_and_recognize() {
    let dir = Scratch::new("gen");
    let out = dir.path("h.json");
    let run = kempe(&["generate", "--family", "prop31", "--k", "1", "--d", "1", "--out", s(&out)]);
    assert_eq!(run.status.code(), Some(0));
    let h = Graph::from_json(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(h.vertex_count(), 12);

    let run = kempe(&["recognize", "--graph", s(&out)]);
    assert_eq!(run.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&run.stdout).unwrap();
    assert_eq!(report["chordless"], true);
    assert_eq!(report["triangle_free"], false);
}

#[test]
fn generation_is_deterministic() {
    let args = ["generate", "--family", "random-chordless", "--n", "15", "--seed", "42"];
    assert_eq!(kempe(&args).stdout, kempe(&args).stdout);
    let run = kempe(&["generate", "--family", "theta", "--arms", "1,2,3"]);
    assert_eq!(run.status.code(), Some(2));
}

#[test]
fn recognize_petersen() {
    let dir = Scratch::new("petersen");
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push(format!("[{},{}]", i, (i + 1) % 5));
        edges.push(format!("[{},{}]", i, i + 5));
        edges.push(format!("[{},{}]", i + 5, (i + 2) % 5 + 5));
    }
    let g = dir.file("p.json", &format!(r#"{{"n":10,"edges":[{}]}}"#, edges.join(",")));
    let run = kempe(&["recognize", "--graph", s(&g)]);
    assert_eq!(run.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&run.stdout).unwrap();
    assert_eq!(report["triangle_free"], true);
    assert_eq!(report["chordless"], false);
    assert_eq!(report["class"], 2);
    assert_eq!(report["max_degree"], 3);
}

#[test]
fn oracle_on_c5() {
    let dir = Scratch::new("oracle");
    let g = dir.file("g.json", r#"{"n":5,"edges":[[0,1],[1,2],[2,3],[3,4],[4,0]]}"#);
    let run = kempe(&["oracle", "--graph", s(&g), "--t", "4"]);
    assert_eq!(run.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&run.stdout).unwrap();
    assert_eq!(report["classes"], 1);
    assert_eq!(report["colorings"], 240);
    let run = kempe(&["oracle", "--graph", s(&g), "--t", "4", "--cap", "10"]);
    assert_eq!(run.status.code(), Some(2));
}
