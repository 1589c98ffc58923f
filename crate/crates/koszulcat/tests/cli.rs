use std::path::PathBuf;
use std::process::{Command, Output};

fn example(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_koszulcat"))
        .args(args)
        .env_remove("KOSZULCAT_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn every_example_validates_except_the_broken_one() {
    for entry in std::fs::read_dir(example("")).unwrap() {
        let path = entry.unwrap().path();
        let o = run(&["validate", path.to_str().unwrap()]);
        let broken = path.ends_with("broken_assoc.kz");
        assert_eq!(o.status.code(), Some(if broken { 1 } else { 0 }), "{}: {}", path.display(), stdout(&o));
    }
}

#[test]
fn broken_associativity_names_the_triple() {
    let o = run(&["validate", example("broken_assoc.kz").to_str().unwrap()]);
    assert!(stdout(&o).contains("(a, a, b)"), "{}", stdout(&o));
}

#[test]
fn nonregular_koszul_fails_with_witness() {
    let o = run(&["koszul", example("dual_numbers.kz").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("witness: x kills"), "{}", stdout(&o));
}

#[test]
fn regular_koszul_passes() {
    let o = run(&["koszul", example("poly_xy.kz").to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["window"], 5);
}

#[test]
fn hh_and_syzygy_on_the_ground_field() {
    let file = example("trivial_q.kz");
    let f = file.to_str().unwrap();
    let o = run(&["hh", f, "-n", "1", "-p", "1", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let hh = v["tables"].as_array().unwrap().iter().find(|t| t["name"] == "HH^1").unwrap();
    let dims: Vec<u64> = hh["entries"].as_array().unwrap().iter().map(|e| e["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![1, 1, 1, 1]);
    let o = run(&["syzygy", f, "-n", "2", "--module", "k"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn window_and_input_errors_exit_2() {
    let f = example("trivial_q.kz");
    let o = run(&["syzygy", f.to_str().unwrap(), "-n", "3", "--module", "k", "--max-degree", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("window"), "{}", stderr(&o));
    let o = run(&["koszul", example("poly_xy.kz").to_str().unwrap(), "--alpha", "x + (y"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--alpha \"x + (y\":1:"), "{}", stderr(&o));
    let o = run(&["hh", f.to_str().unwrap(), "-p", "-1"]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    let o = run(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn parse_errors_carry_line_and_column() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.kz");
    std::fs::write(&path, "field = \"Q\"\n[monoid]\nkind = \"algebra\"\nbasis = [\"1\"]\nunit = \"1\"\nbogus = 3\n").unwrap();
    let o = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bad.kz:6:"), "{}", stderr(&o));
}

#[test]
fn report_replays_identically_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let o = run(&[
        "tensor-over",
        example("c2conv.kz").to_str().unwrap(),
        "--threads",
        "1",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = Command::new(env!("CARGO_BIN_EXE_koszulcat"))
        .args(["replay", report.to_str().unwrap(), "--json"])
        .env("KOSZULCAT_THREADS", "8")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), std::fs::read_to_string(&report).unwrap());
}
