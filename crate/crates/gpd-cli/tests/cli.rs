//! End-to-end checks of the command line surface on the shipped data files.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_gpd")
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("binary runs")
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(bin())
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn tempdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("gpd-cli-test-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn compute_reproduces_the_published_spans() {
    let dir = tempdir("compute");
    let input = data("example_filtration.flt");
    let out = run(&[
        "compute",
        "--degree",
        "0",
        "--degree",
        "1",
        "--invariant",
        "both",
        "--classical",
        "--out-dir",
        dir.to_str().unwrap(),
        input.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let q0: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("example_filtration.q0.bd.json")).unwrap())
            .unwrap();
    let points = q0["points"].as_array().unwrap();
    assert_eq!(points.len(), 4);
    let find = |b: &str, d: &str| -> &serde_json::Value {
        points
            .iter()
            .find(|p| p["interval"][0] == b && p["interval"][1] == d)
            .unwrap_or_else(|| panic!("missing point [{b},{d}]"))
    };
    assert_eq!(find("1", "1")["basis"], serde_json::json!([["1", "-1", "0", "0"]]));
    assert_eq!(find("1", "2")["basis"], serde_json::json!([["1", "1", "-2", "0"]]));
    assert_eq!(find("3", "4")["basis"], serde_json::json!([["1", "1", "1", "-3"]]));
    assert_eq!(find("0", "inf")["basis"], serde_json::json!([["1", "0", "0", "0"]]));

    let q1: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("example_filtration.q1.bd.json")).unwrap())
            .unwrap();
    let points1 = q1["points"].as_array().unwrap();
    assert_eq!(points1.len(), 2);

    // The kernel route agrees off the diagonal: same [5,6] loop class.
    let lap1: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("example_filtration.q1.lap.json")).unwrap())
            .unwrap();
    let lap_points = lap1["points"].as_array().unwrap();
    assert!(lap_points.iter().any(|p| p["interval"][0] == "5" && p["interval"][1] == "6"));

    // Classical integer diagram.
    let classical: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.join("example_filtration.q0.classical.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(classical["points"].as_array().unwrap().len(), 4);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn outputs_are_deterministic() {
    let dir1 = tempdir("det1");
    let dir2 = tempdir("det2");
    let input = data("example_filtration.flt");
    for dir in [&dir1, &dir2] {
        let out = run(&[
            "compute",
            "--degree",
            "1",
            "--out-dir",
            dir.to_str().unwrap(),
            input.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let a = std::fs::read(dir1.join("example_filtration.q1.bd.json")).unwrap();
    let b = std::fs::read(dir2.join("example_filtration.q1.bd.json")).unwrap();
    assert_eq!(a, b);
    std::fs::remove_dir_all(&dir1).ok();
    std::fs::remove_dir_all(&dir2).ok();
}

#[test]
fn treegram_roundtrip_verdict_and_dot() {
    let dir = tempdir("treegram");
    let input = data("example_filtration.flt");
    let out = run(&[
        "treegram",
        "--reconstruct",
        "--out-dir",
        dir.to_str().unwrap(),
        input.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("reconstruction vs inversion: equal"));
    let dot = run(&[
        "treegram",
        "--format",
        "dot",
        "--out-dir",
        dir.to_str().unwrap(),
        input.to_str().unwrap(),
    ]);
    assert!(dot.status.success());
    let content = std::fs::read_to_string(dir.join("example_filtration.treegram.dot")).unwrap();
    assert!(content.starts_with("digraph"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn refining_pair_same_classical_different_subspaces() {
    let dir = tempdir("pair");
    for name in ["degree0_pair_a.flt", "degree0_pair_b.flt"] {
        let out = run(&[
            "compute",
            "--degree",
            "0",
            "--classical",
            "--out-dir",
            dir.to_str().unwrap(),
            data(name).to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let ca = std::fs::read(dir.join("degree0_pair_a.q0.classical.json")).unwrap();
    let cb = std::fs::read(dir.join("degree0_pair_b.q0.classical.json")).unwrap();
    assert_eq!(ca, cb, "classical diagrams should be byte-identical");

    // The subspace diagrams differ, and `compare` reports it with exit 1.
    let cmp = run(&[
        "compare",
        dir.join("degree0_pair_a.q0.bd.json").to_str().unwrap(),
        dir.join("degree0_pair_b.q0.bd.json").to_str().unwrap(),
    ]);
    assert_eq!(cmp.status.code(), Some(1));

    // A file compares equal to itself.
    let same = run(&[
        "compare",
        dir.join("degree0_pair_a.q0.bd.json").to_str().unwrap(),
        dir.join("degree0_pair_a.q0.bd.json").to_str().unwrap(),
    ]);
    assert!(same.status.success());
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn empty_input_yields_empty_diagram_and_success() {
    let dir = tempdir("empty");
    let input = dir.join("empty.flt");
    std::fs::write(&input, "# nothing here\n").unwrap();
    let out = run_in(&dir, &["compute", input.to_str().unwrap()]);
    assert!(out.status.success());
    let j: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("empty.empty.json")).unwrap()).unwrap();
    assert_eq!(j["points"].as_array().unwrap().len(), 0);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn input_errors_exit_with_code_two() {
    let dir = tempdir("badinput");
    let input = dir.join("bad.flt");
    // A coface entering before its face.
    std::fs::write(&input, "1 ; a b\n2 ; a\n2 ; b\n").unwrap();
    let out = run(&["compute", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    // Disconnected final complex for a treegram.
    std::fs::write(&input, "1 ; a\n2 ; b\n").unwrap();
    let out = run(&["treegram", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_reports_and_seeds_reproduce() {
    let out = run(&["verify", "--seed", "3", "--filtrations", "4"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines.len() >= 10, "expected one line per suite");
    for line in &lines {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["status"], "pass", "suite {} failed", v["suite"]);
    }
    let again = run(&["verify", "--seed", "3", "--filtrations", "4"]);
    assert_eq!(out.stdout, again.stdout, "same seed, same report");
}

#[test]
fn float_backend_skips_exactness_suites() {
    let out = run(&["verify", "--seed", "3", "--filtrations", "4", "--backend", "float"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("skipped-float"));
}

#[test]
fn backend_env_var_overrides_flag() {
    let dir = tempdir("env");
    let input = data("example_filtration.flt");
    let out = Command::new(bin())
        .env("GPD_BACKEND", "float")
        .args([
            "compute",
            "--degree",
            "0",
            "--out-dir",
            dir.to_str().unwrap(),
            input.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(dir.join("example_filtration.q0.bd.json")).unwrap();
    // Float backend serializes grades as floats.
    assert!(text.contains("1.0"), "expected float grades, got: {text}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn tsv_output_lists_endpoints_and_dims() {
    let dir = tempdir("tsv");
    let input = data("example_filtration.flt");
    let out = run(&[
        "compute",
        "--degree",
        "0",
        "--format",
        "tsv",
        "--out-dir",
        dir.to_str().unwrap(),
        input.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(dir.join("example_filtration.q0.bd.tsv")).unwrap();
    assert!(text.starts_with("birth\tdeath\tdim\n"));
    assert!(text.contains("0\tinf\t1"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn harmonic_output_matches_classical_multiplicities() {
    let dir = tempdir("harmonic");
    let input = data("example_filtration.flt");
    let out = run(&[
        "harmonic",
        "--degree",
        "1",
        "--out-dir",
        dir.to_str().unwrap(),
        input.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let j: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("example_filtration.q1.harmonic.json")).unwrap())
            .unwrap();
    let points = j["points"].as_array().unwrap();
    // One finite off-diagonal loop class, at [5,6], dimension 1.
    assert_eq!(points.len(), 1);
    assert_eq!(points[0]["interval"][0], "5");
    assert_eq!(points[0]["interval"][1], "6");
    assert_eq!(points[0]["dim"], 1);
    std::fs::remove_dir_all(&dir).ok();
}
