use std::process::{Command, Output};

fn qgvc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgvc")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = qgvc(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn csv_row(text: &str) -> Vec<(String, String)> {
    let mut lines = text.lines();
    let head = lines.next().unwrap().split(',');
    let row = lines.next().unwrap().split(',');
    head.zip(row).map(|(h, v)| (h.to_string(), v.to_string())).collect()
}

fn field(text: &str, name: &str) -> String {
    csv_row(text).into_iter().find(|(h, _)| h == name).map(|(_, v)| v).unwrap()
}

fn assert_single_line_error(out: &Output) {
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert_eq!(err.trim_end().lines().count(), 1, "{err}");
    assert!(err.starts_with("error:"), "{err}");
}

#[test]
fn build_op_summaries() {
    assert_eq!(stdout(&["build-op", "--d", "3"]), "d=3: 6 D4 classes, 16 terms, 217 entries\n");
    assert_eq!(stdout(&["build-op", "--d", "5"]), "d=5: 55 D4 classes, 256 terms, 14872 entries\n");
    let json: serde_json::Value = serde_json::from_str(&stdout(&["build-op", "--d", "4", "--format", "json"])).unwrap();
    assert_eq!(json["entries"], 2346);
    assert_single_line_error(&qgvc(&["build-op", "--d", "1"]));
}

#[test]
fn operator_file_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    stdout(&["build-op", "--d", "3", "--out", a.to_str().unwrap()]);
    stdout(&["build-op", "--d", "3", "--out", b.to_str().unwrap()]);
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let op: serde_json::Value = serde_json::from_slice(&ta).unwrap();
    assert_eq!(op["terms"].as_array().unwrap().len(), 16);
}

#[test]
fn synth_counts() {
    let ucr = stdout(&["synth", "ucr", "--d", "3", "--k", "2", "--format", "csv"]);
    assert_eq!((field(&ucr, "rz"), field(&ucr, "gcx")), ("9".into(), "10".into()));
    let ccr = stdout(&["synth", "ccr", "--preset", "eq9", "--format", "csv"]);
    assert_eq!((field(&ccr, "gcx"), field(&ccr, "depth")), ("94".into(), "176".into()));
    let or3 = stdout(&["synth", "gate", "--lor3-qutrit", "--format", "csv"]);
    assert_eq!(field(&or3, "gcx"), "6");
    let or4 = stdout(&["synth", "gate", "--lor4-qutrit", "--format", "csv"]);
    assert_eq!((field(&or4, "gcx"), field(&or4, "depth")), ("8".into(), "6".into()));
    assert_single_line_error(&qgvc(&["synth", "gate", "--lor3-qutrit", "--toffoli"]));
}

#[test]
fn compile_totals() {
    let step = stdout(&["compile", "trotter-step", "--d", "3", "--format", "csv"]);
    assert_eq!(field(&step, "gcx"), "10752");
    let plaq = stdout(&["compile", "plaquette", "--d", "3", "--format", "csv"]);
    assert_eq!(field(&plaq, "depth"), "3104");
    let alt = stdout(&["compile", "plaquette", "--d", "3", "--style", "alternate", "--faces", "pair", "--format", "csv"]);
    assert_eq!((field(&alt, "gcx"), field(&alt, "wires")), ("1802".into(), "17".into()));
    let no_h = stdout(&["compile", "plaquette", "--d", "3", "--gating-outside", "--eliminate-h", "--format", "csv"]);
    assert_eq!(field(&no_h, "h"), "0");
    assert_single_line_error(&qgvc(&["compile", "trotter-step", "--style", "alternate"]));
    assert_single_line_error(&qgvc(&["compile", "term", "--pqrs", "0003"]));
}

#[test]
fn circuit_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("term.json");
    stdout(&["compile", "term", "--d", "3", "--pqrs", "0110", "--out", path.to_str().unwrap()]);
    let c = qgvc::ir::Circuit::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(c.num_wires(), 9);
}

#[test]
fn simulate_series() {
    let exact = stdout(&["simulate", "exact", "--g2", "0.2", "--format", "csv"]);
    let rows: Vec<&str> = exact.lines().skip(1).collect();
    assert_eq!(rows.len(), 10);
    let first: f64 = rows[0].split(',').nth(1).unwrap().parse().unwrap();
    assert!((first - 0.0059995205375).abs() < 1e-9);
    let compiled = stdout(&["simulate", "trotter", "--nt", "1", "--tmax", "0.02", "--format", "csv"]);
    let ideal = stdout(&["simulate", "trotter", "--nt", "1", "--tmax", "0.02", "--ideal", "--format", "csv"]);
    let value = |s: &str| s.lines().nth(1).unwrap().split(',').nth(1).unwrap().parse::<f64>().unwrap();
    assert!((value(&compiled) - 0.00607722).abs() < 1e-6);
    assert!((value(&compiled) - value(&ideal)).abs() < 1e-9);
    assert_single_line_error(&qgvc(&["simulate", "trotter", "--nt", "0"]));
    assert_single_line_error(&qgvc(&["simulate", "exact", "--dt", "-1"]));
}

#[test]
fn thread_variable_is_checked() {
    let out = Command::new(env!("CARGO_BIN_EXE_qgvc"))
        .args(["build-op", "--d", "2"])
        .env("QGVC_THREADS", "zero")
        .output()
        .unwrap();
    assert_single_line_error(&out);
    let ok = Command::new(env!("CARGO_BIN_EXE_qgvc"))
        .args(["build-op", "--d", "2"])
        .env("QGVC_THREADS", "2")
        .output()
        .unwrap();
    assert!(ok.status.success());
}
