use std::path::PathBuf;
use std::process::{Command, Output};

use mirrorcheck::aside::build_aside;
use mirrorcheck::gluing::GluingSpec;
use mirrorcheck::quiver::GradedQuiver;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mirrorcheck"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn topology_of_the_running_example() {
    let o = run(&["topology", "--spec", &fixture("linear_1331_swapped.json")]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("genus 2 boundaries [1, 1, 6, 6]"));
    assert!(s.trim_end().ends_with("AGREE"));
}

#[test]
fn balanced_ring_is_a_torus() {
    let o = run(&["topology", "--spec", &fixture("balanced_ring.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("genus 1"));
}

#[test]
fn verify_passes_on_a_chain() {
    let o = run(&["verify", "--spec", &fixture("chain_1221.json")]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.lines().all(|l| l.starts_with("PASS")), "{s}");
    assert!(s.contains("14 vertices"));
}

#[test]
fn verify_json_reports_pass() {
    let o = run(&["--format", "json", "verify", "--spec", &fixture("chain_1221.json")]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.is_object());
}

#[test]
fn search_genus_two() {
    let o = run(&["search", "2", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("twists [1]"));
    let j = run(&["--format", "json", "search", "2", "1"]);
    let v: serde_json::Value = serde_json::from_slice(&j.stdout).unwrap();
    assert_eq!(v["twists"], serde_json::json!([1]));
    assert_eq!(v["failures"], serde_json::json!([]));
}

#[test]
fn ext_fixture() {
    let o = run(&["ext", "--spec", &fixture("ext_example.json")]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    for line in [
        "Hom(M1, M1) = {0:1, 1:1}",
        "Hom(M1, M2) = {0:2, 1:1}",
        "Hom(M2, M1) = {1:1}",
        "Hom(M2, M2) = {0:1, 1:1}",
    ] {
        assert!(s.contains(line), "{s}");
    }
}

#[test]
fn localize_prints_module() {
    let o = run(&[
        "localize",
        "--spec",
        &fixture("linear_1331_swapped.json"),
        "--side",
        "minus",
        "--comp",
        "1",
        "--pos",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("E-(1,0) = "));
    assert!(s.contains("degree -1"));
}

#[test]
fn aside_dot_is_deterministic() {
    let args = ["--format", "dot", "aside", "--spec", &fixture("linear_1331_swapped.json")];
    let a = stdout(&run(&args));
    let b = stdout(&run(&args));
    assert_eq!(a, b);
    assert!(a.starts_with("digraph"));
}

#[test]
fn aside_json_round_trips() {
    let path = fixture("linear_1331_swapped.json");
    let o = run(&["--format", "json", "aside", "--spec", &path]);
    assert_eq!(o.status.code(), Some(0));
    let q: GradedQuiver = serde_json::from_slice(&o.stdout).unwrap();
    let spec: GluingSpec = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(q, build_aside(&spec));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("mirrorcheck-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("topology.txt");
    let o = run(&[
        "--out",
        file.to_str().unwrap(),
        "topology",
        "--spec",
        &fixture("linear_1331_swapped.json"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(&file).unwrap().contains("AGREE"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn bad_input_exits_two() {
    let o = run(&["topology", "--spec", "does/not/exist.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));

    let dir = std::env::temp_dir().join(format!("mirrorcheck-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let empty = dir.join("empty.json");
    std::fs::write(&empty, r#"{"shape":"linear","ranks":[],"perms":[]}"#).unwrap();
    assert_eq!(
        run(&["topology", "--spec", empty.to_str().unwrap()]).status.code(),
        Some(2)
    );
    let wrong = dir.join("wrong.json");
    std::fs::write(&wrong, r#"{"shape":"linear","ranks":[1,2,1],"perms":[[0,0]]}"#).unwrap();
    assert_eq!(
        run(&["aside", "--spec", wrong.to_str().unwrap()]).status.code(),
        Some(2)
    );
    std::fs::remove_dir_all(&dir).unwrap();

    let o = run(&[
        "localize",
        "--spec",
        &fixture("linear_1331_swapped.json"),
        "--side",
        "minus",
        "--comp",
        "9",
        "--pos",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}
