//! End-to-end checks of the binary: exit codes, file formats, and bench
//! determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pdmatch"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pdmatch-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write(path: &Path, content: &str) {
    std::fs::write(path, content).unwrap();
}

#[test]
fn solve_fixture_exactly() {
    let inst = tmp("ir3.json");
    let out = run(&[
        "generate",
        "--family",
        "fixture",
        "--name",
        "ir",
        "--param",
        "3",
        "--output",
        inst.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    let matching = tmp("ir3-match.json");
    let out = run(&[
        "solve",
        "--input",
        inst.to_str().unwrap(),
        "--algorithm",
        "const-m",
        "--output",
        matching.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("size=3 optimal=true"));

    let saved = std::fs::read_to_string(&matching).unwrap();
    assert_eq!(saved, r#"{"size":3,"edges":[[1,0],[2,0],[3,0]]}"#);
}

#[test]
fn adversarial_greedy_on_tight_fixture() {
    let inst = tmp("tight2.json");
    run(&[
        "generate",
        "--family",
        "fixture",
        "--name",
        "tight",
        "--param",
        "2",
        "--output",
        inst.to_str().unwrap(),
    ]);
    let out = run(&[
        "solve",
        "--input",
        inst.to_str().unwrap(),
        "--algorithm",
        "greedy",
        "--machine-order",
        "1,0",
        "--tiebreak",
        "high",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("size=2"));
}

#[test]
fn forced_algorithm_on_wrong_class_exits_2() {
    let inst = tmp("vdep.json");
    // Machine-dependent but not job-dependent and not monotone.
    write(&inst, r#"{"n":3,"m":2,"b":[[2,0],[2,1],[0,1]]}"#);
    let out = run(&[
        "solve",
        "--input",
        inst.to_str().unwrap(),
        "--algorithm",
        "udep-mono",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn budget_exhaustion_exits_3() {
    let inst = tmp("wide.json");
    write(
        &inst,
        &pdmatch::generators::gen_random(12, 4, 4, 0.0, 9)
            .unwrap()
            .to_json(),
    );
    let out = run(&[
        "solve",
        "--input",
        inst.to_str().unwrap(),
        "--algorithm",
        "oracle",
        "--budget",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn malformed_input_exits_1() {
    let inst = tmp("bad.json");
    write(&inst, r#"{"n":1,"m":1,"b":[[-1]]}"#);
    let out = run(&["solve", "--input", inst.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    let missing = tmp("does-not-exist.json");
    let out = run(&["solve", "--input", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_reports_maximality_flags() {
    let inst = tmp("ir3-verify.json");
    write(&inst, r#"{"n":4,"m":1,"b":[[1],[3],[3],[3]]}"#);

    let full = tmp("full.json");
    write(&full, r#"{"size":3,"edges":[[1,0],[2,0],[3,0]]}"#);
    let out = run(&[
        "verify",
        "--input",
        inst.to_str().unwrap(),
        "--matching",
        full.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains(r#""valid":true"#));
    assert!(text.contains(r#""maximal":true"#));
    assert!(text.contains(r#""strongly_maximal":true"#));

    // A maximal but not strongly maximal edge.
    let single = tmp("single.json");
    write(&single, r#"{"size":1,"edges":[[0,0]]}"#);
    let out = run(&[
        "verify",
        "--input",
        inst.to_str().unwrap(),
        "--matching",
        single.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains(r#""maximal":true"#));
    assert!(text.contains(r#""strongly_maximal":false"#));

    let overfull = tmp("overfull.json");
    write(&overfull, r#"{"size":2,"edges":[[0,0],[1,0]]}"#);
    let out = run(&[
        "verify",
        "--input",
        inst.to_str().unwrap(),
        "--matching",
        overfull.to_str().unwrap(),
    ]);
    assert_ne!(out.status.code(), Some(0));
    assert!(stdout(&out).contains(r#""valid":false"#));
}

#[test]
fn classify_worked_example() {
    let inst = tmp("3part.json");
    run(&[
        "generate",
        "--family",
        "fixture",
        "--name",
        "3part-example",
        "--output",
        inst.to_str().unwrap(),
    ]);
    let out = run(&["classify", "--input", inst.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(!report["monotonizable"].is_null());
    assert_eq!(report["tolerance_set"].as_array().unwrap().len(), 12);
    assert_eq!(report["type_count"], 2);
}

#[test]
fn classify_uniform_matrix() {
    let inst = tmp("ones.json");
    write(&inst, r#"{"n":2,"m":2,"b":[[1,1],[1,1]]}"#);
    let out = run(&["classify", "--input", inst.to_str().unwrap()]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["tolerance_set"], serde_json::json!([1]));
    assert_eq!(report["type_count"], 1);
}

#[test]
fn generate_reduction_with_metadata() {
    let inst = tmp("3dm.json");
    let meta = tmp("3dm-meta.json");
    let out = run(&[
        "generate",
        "--family",
        "3dm",
        "--k",
        "2",
        "--triples",
        "0,0,0;0,1,1;1,1,1",
        "--output",
        inst.to_str().unwrap(),
        "--metadata",
        meta.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let parsed = pdmatch::parse_instance(&std::fs::read(&inst).unwrap()).unwrap();
    assert_eq!(parsed.jobs(), 5);
    assert_eq!(parsed.machines(), 3);
    let meta: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&meta).unwrap()).unwrap();
    assert_eq!(meta["roles"].as_array().unwrap().len(), 5);
}

#[test]
fn generate_rejects_bad_three_partition() {
    let out = run(&[
        "generate",
        "--family",
        "3partition",
        "--a",
        "26,30,31,33,36,45",
        "--b",
        "100",
        "--k",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn solve_auto_round_trip() {
    let inst = tmp("mono.json");
    run(&[
        "generate",
        "--family",
        "mono",
        "--n",
        "7",
        "--m",
        "3",
        "--max-tol",
        "4",
        "--seed",
        "11",
        "--output",
        inst.to_str().unwrap(),
    ]);
    let matching = tmp("mono-match.json");
    let out = run(&[
        "solve",
        "--input",
        inst.to_str().unwrap(),
        "--output",
        matching.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&[
        "verify",
        "--input",
        inst.to_str().unwrap(),
        "--matching",
        matching.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
}

fn strip_elapsed(csv: &str) -> String {
    csv.lines()
        .map(|line| {
            let fields: Vec<&str> = line.split(',').collect();
            fields[..fields.len().saturating_sub(1)].join(",")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn bench_greedy_stays_above_half() {
    let report = tmp("bench-greedy.csv");
    let out = run(&[
        "bench",
        "--corpus",
        "random:count=500,n=8,m=3,max-tol=4,zero-prob=0.2",
        "--algorithms",
        "greedy",
        "--seed",
        "7",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let summary = text
        .lines()
        .find(|l| l.starts_with("summary algorithm=greedy"))
        .expect("summary line");
    let min_ratio: f64 = summary
        .split("min_ratio=")
        .nth(1)
        .unwrap()
        .split_whitespace()
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!(min_ratio >= 0.5, "summary: {summary}");

    // Determinism: a second run is byte-identical except the elapsed column.
    let report2 = tmp("bench-greedy2.csv");
    run(&[
        "bench",
        "--corpus",
        "random:count=500,n=8,m=3,max-tol=4,zero-prob=0.2",
        "--algorithms",
        "greedy",
        "--seed",
        "7",
        "--report",
        report2.to_str().unwrap(),
    ]);
    let a = std::fs::read_to_string(&report).unwrap();
    let b = std::fs::read_to_string(&report2).unwrap();
    assert_eq!(strip_elapsed(&a), strip_elapsed(&b));
    assert!(report.with_extension("json").exists());
}

#[test]
fn bench_one_two_is_always_optimal() {
    let report = tmp("bench-onetwo.csv");
    let out = run(&[
        "bench",
        "--corpus",
        "random:count=200,n=8,m=3,max-tol=2,zero-prob=0",
        "--algorithms",
        "one-two",
        "--seed",
        "3",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let summary = stdout(&out);
    let line = summary
        .lines()
        .find(|l| l.starts_with("summary algorithm=one-two"))
        .expect("summary line");
    assert!(line.contains("min_ratio=1.000000"), "summary: {line}");
    assert!(line.contains("mean_ratio=1.000000"), "summary: {line}");
}

#[test]
fn bench_empty_corpus() {
    let out = run(&[
        "bench",
        "--corpus",
        "random:count=0",
        "--algorithms",
        "greedy",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("summary empty corpus"));
}

#[test]
fn unknown_algorithm_exits_1() {
    let inst = tmp("one.json");
    write(&inst, r#"{"n":1,"m":1,"b":[[1]]}"#);
    let out = run(&[
        "solve",
        "--input",
        inst.to_str().unwrap(),
        "--algorithm",
        "simplex",
    ]);
    assert_eq!(out.status.code(), Some(1));
}
