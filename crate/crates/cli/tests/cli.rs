use std::path::PathBuf;
use std::process::{Command, Output};

fn qcsp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcsp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn instance(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../instances");
    root.join(name).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn betweenness_is_sat() {
    let out = qcsp(&["solve", "--input", &instance("betweenness.json"), "--witness"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("SAT\n"));
    let forward = ["w < x", "x < y", "y < z"].iter().all(|l| text.contains(l));
    let backward = ["w > x", "x > y", "y > z"].iter().all(|l| text.contains(l));
    assert!(forward || backward, "{text}");
}

#[test]
fn patchwork_union_is_unsat() {
    let out = qcsp(&["solve", "--input", &instance("patchwork_union.json"), "--no-witness"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "UNSAT\n");
}

#[test]
fn malformed_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ \"calculus\": \"pa\", \"variables\": [\"x\"], \"constraints\": [{ \"scope\": [\"x\", \"q\"], \"relations\": [\"<\"] }] }").unwrap();
    let out = qcsp(&["solve", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("constraints[0].scope[1]"), "{err}");
}

#[test]
fn counts() {
    assert_eq!(stdout(&qcsp(&["count", "--calculus", "pa", "-m", "4"])).trim(), "75");
    assert_eq!(stdout(&qcsp(&["count", "--calculus", "ia", "-m", "2"])).trim(), "13");
    assert_eq!(stdout(&qcsp(&["oracle", "count", "--calculus", "cdc", "-m", "2"])).trim(), "9");
}

#[test]
fn coloring_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    for (k, code) in [("2", 1), ("3", 0)] {
        let out = qcsp(&["gen", "coloring-cdc", "--graph", &instance("triangle.edges"), "-k", k]);
        assert_eq!(out.status.code(), Some(0));
        let cdc = dir.path().join(format!("k{k}.json"));
        std::fs::write(&cdc, &out.stdout).unwrap();
        assert_eq!(qcsp(&["solve", "--input", cdc.to_str().unwrap()]).status.code(), Some(code));
        let ia = qcsp(&["gen", "cdc-to-ia", "--input", cdc.to_str().unwrap()]);
        let ia_path = dir.path().join(format!("ia{k}.json"));
        std::fs::write(&ia_path, &ia.stdout).unwrap();
        assert_eq!(qcsp(&["solve", "--input", ia_path.to_str().unwrap()]).status.code(), Some(code));
    }
}

#[test]
fn decomposition_round_trip_and_stats() {
    let dir = tempfile::tempdir().unwrap();
    let input = instance("betweenness.json");
    let td = qcsp(&["decompose", "--input", &input, "--mode", "exact"]);
    assert_eq!(td.status.code(), Some(0));
    let td_path = dir.path().join("b.td");
    std::fs::write(&td_path, &td.stdout).unwrap();
    let stats = dir.path().join("stats.csv");
    let out = qcsp(&[
        "solve",
        "--input",
        &input,
        "--decomposition",
        td_path.to_str().unwrap(),
        "--stats",
        stats.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(stats).unwrap();
    assert!(csv.starts_with("node_id,kind,bag_size,record_size,micros\n"));

    std::fs::write(&td_path, "0 - w x\n").unwrap();
    let out = qcsp(&["solve", "--input", &input, "--decomposition", td_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn seeded_generation_is_deterministic() {
    let args = ["gen", "random", "--calculus", "rcc8", "--vars", "6", "--constraints", "8", "--seed", "4"];
    assert_eq!(qcsp(&args).stdout, qcsp(&args).stdout);
    let args = ["gen", "ktree", "-n", "50", "-w", "2", "--seed", "4"];
    assert_eq!(qcsp(&args).stdout, qcsp(&args).stdout);
}

#[test]
fn model_output() {
    let out = qcsp(&["solve", "--input", &instance("meeting.json"), "--model"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("talk = ["));
}

#[test]
fn table_overrides_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let dump = qcsp(&["tables", "dump", "--calculus", "rcc5"]);
    let mut table: serde_json::Value = serde_json::from_slice(&dump.stdout).unwrap();
    table["converse"]["PP"] = "PP".into();
    std::fs::write(dir.path().join("rcc5.json"), table.to_string()).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_qcsp"))
        .args(["tables", "check", "--calculus", "rcc5"])
        .env("QCSP_TABLES", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(qcsp(&["tables", "check", "--calculus", "rcc5"]).status.code(), Some(0));
}
