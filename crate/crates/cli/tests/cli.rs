use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn rtglab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rtglab")).args(args).output().expect("binary runs")
}

fn rtglab_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_rtglab"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const Z2_DISCRETE: &str = r#"{"group": {"order": 2, "mul": [[0,1],[1,0]]}, "cone": [0]}"#;

fn s3_transposition() -> String {
    let g = rtglab_core::group::catalog::symmetric(3);
    let t = rtglab_core::group::catalog::s3_transposition_12();
    format!(r#"{{"group": {}, "cone": [0, {t}]}}"#, g.to_json())
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn analyze_discrete_z2() {
    let dir = tempfile::tempdir().unwrap();
    let out = rtglab(&["analyze", &write(&dir, "z2.json", Z2_DISCRETE)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["sigma"]["kind"], "discrete");
    assert_eq!(v["n_of_g"], serde_json::json!([0]));
    assert_eq!(v["topological"], true);
}

#[test]
fn analyze_s3_with_transposition_cone() {
    let dir = tempfile::tempdir().unwrap();
    let out = rtglab(&["analyze", "--functions", &write(&dir, "s3.json", &s3_transposition())]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["sigma"]["kind"], "indiscrete");
    assert_eq!(v["n_of_g"], serde_json::json!([0, 1, 2, 3, 4, 5]));
    assert_eq!(v["admissible"], false);
    assert_eq!(v["measure_dims"]["m_sigma"], 1);
    assert_eq!(v["haar"]["canonical"], serde_json::json!(["1/3", "1/3", "1/3"]));
    for e in v["functions"]["fix"].as_array().unwrap() {
        match e["space"].as_str().unwrap() {
            "c_sigma" | "lc" => assert_eq!(e["fix"], serde_json::json!([0, 1, 2, 3, 4, 5])),
            // C(τ) is not translation invariant when the cone is not normal
            _ => assert!(e["error"].as_str().unwrap().contains("not translation invariant")),
        }
    }
}

#[test]
fn analyze_seeded_is_deterministic() {
    let a = rtglab(&["analyze", "--seed", "11", "--max-order", "12"]);
    let b = rtglab(&["analyze", "--seed", "11", "--max-order", "12"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let truncated = write(&dir, "t.json", "{\"group\":");
    let out_of_range = write(&dir, "r.json", r#"{"group": {"order": 2, "mul": [[0,1],[1,0]]}, "cone": [0, 5]}"#);
    let no_identity = write(&dir, "e.json", r#"{"group": {"order": 2, "mul": [[1,0],[0,1]]}, "cone": [0]}"#);
    for args in [
        vec!["analyze", truncated.as_str()],
        vec!["measures", out_of_range.as_str()],
        vec!["haar", no_identity.as_str()],
        vec!["analyze", "--max-order", "30"],
        vec!["verify", "--suite", "everything"],
        vec!["enumerate"],
        vec!["frobnicate"],
    ] {
        let out = rtglab(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn unwritable_out_exits_2() {
    let out = rtglab(&["--out", "/nonexistent/dir/x.json", "make-schreier", "--base", "z3", "--auts", "1,2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn haar_relaxed_on_s3() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(&dir, "s3.json", &s3_transposition());
    let out = rtglab(&["haar", &path, "--mode", "relaxed"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["agree"], true);
    let systems = v["systems"].as_array().unwrap();
    assert_eq!(systems.len(), 1);
    assert_eq!(systems[0]["chain"], serde_json::json!([[0, 1, 2, 3, 4, 5], [0, 3, 4], [0]]));
    let strict = json(&rtglab(&["haar", &path, "--mode", "strict"]));
    assert!(strict["systems"].as_array().unwrap().is_empty());
}

#[test]
fn enumerate_names_and_determinism() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        let out = rtglab(&["enumerate", "--max-order", "6", "--out", d.path().to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(json(&out)["count"], 24);
    }
    let mut names: Vec<_> = std::fs::read_dir(a.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names.len(), 24);
    assert_eq!(names[0], "000-Z2-h0.json");
    for n in &names {
        let x = std::fs::read(a.path().join(n)).unwrap();
        assert_eq!(x, std::fs::read(b.path().join(n)).unwrap());
        let back = rtglab(&["measures", a.path().join(n).to_str().unwrap()]);
        assert_eq!(back.status.code(), Some(0), "{n:?}");
    }
}

#[test]
fn make_schreier() {
    let out = rtglab(&["make-schreier", "--base", "z12", "--auts", "1,5"]);
    assert_eq!(out.status.code(), Some(0));
    let g = rtglab_core::GroupTable::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(g.order(), 24);
    assert!(rtglab_core::group::find_isomorphism(&g, &rtglab_core::generators::z12_mult5()).is_some());
    assert_eq!(rtglab(&["make-schreier", "--base", "z4", "--auts", "1,2"]).status.code(), Some(2));
    assert_eq!(rtglab(&["make-schreier", "--base", "q8", "--auts", "1"]).status.code(), Some(2));
    assert_eq!(rtglab(&["make-schreier", "--base", "z12", "--auts", "1,5", "--max-order", "12"]).status.code(), Some(2));
}

#[test]
fn report_round_trip() {
    let empty = rtglab_stdin(&["report", "--format", "csv"], b"");
    assert_eq!(empty.status.code(), Some(0));
    assert_eq!(String::from_utf8(empty.stdout).unwrap().lines().count(), 1);

    let run = rtglab(&["verify", "--suite", "sigma", "--max-order", "2"]);
    assert_eq!(run.status.code(), Some(0));
    let v = json(&run);
    let records = v["summary"]["records"].as_u64().unwrap() as usize;
    let two = [run.stdout.clone(), run.stdout.clone()].concat();
    let csv = rtglab_stdin(&["report", "--format", "csv"], &two);
    assert_eq!(csv.status.code(), Some(0));
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.starts_with("suite,max_order,index,instance,property,status,detail"));
    assert_eq!(text.lines().count(), 1 + 2 * records);
    let back = json(&rtglab_stdin(&["report"], &run.stdout));
    assert_eq!(back[0], v);

    assert_eq!(rtglab_stdin(&["report"], b"[1, 2]").status.code(), Some(2));
}

#[test]
fn verify_writes_timing_to_stderr_only() {
    let out = rtglab(&["verify", "--suite", "functions", "--max-order", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let stderr = String::from_utf8(out.stderr).unwrap();
    let timing: Value = serde_json::from_str(stderr.lines().last().unwrap()).unwrap();
    assert!(timing["timing"]["elapsed_ms"].is_u64());
    assert!(!String::from_utf8(out.stdout).unwrap().contains("elapsed"));
}

#[test]
fn injected_fault_is_reported() {
    let out = rtglab(&["verify", "--suite", "sigma", "--max-order", "4", "--inject-fault", "sigma-bit"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("violation: sigma.oracle"));
    assert!(json(&out)["summary"]["fail"].as_u64().unwrap() >= 1);
}

#[test]
fn full_csv_row_count() {
    let out = rtglab(&["verify", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    // header plus 62 property rows for each of the 185 catalog instances
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 1 + 11470);
}
