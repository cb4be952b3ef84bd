//! The `reflexlab` binary: exit codes, report output, config files.

use std::path::PathBuf;
use std::process::{Command, Output};

fn reflexlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reflexlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scratch_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("reflexlab-cli-{name}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn verify_all_on_b3_passes() {
    let o = reflexlab(&[
        "verify",
        "all",
        "--family",
        "hyperoctahedral",
        "--n",
        "3",
        "--trials",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("PASS  hyperoctahedral-3  lemmas"));
    assert!(out.contains("SKIP  hyperoctahedral-3  dihedral"));
    assert!(out.trim_end().ends_with("overall: PASS"));
}

#[test]
fn malformed_generator_file_reports_line() {
    let dir = scratch_dir("malformed");
    let path = dir.join("bad.gens");
    std::fs::write(
        &path,
        "# two generators\ndegree 3\nsigns=111 perm=1 2 3\nsigns=00 perm=2 3 1\n",
    )
    .unwrap();
    let o = reflexlab(&["group", "--file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn generator_file_round_trip() {
    let dir = scratch_dir("file");
    let path = dir.join("b2.gens");
    std::fs::write(&path, "degree 2\nsigns=10 perm=1 2\nsigns=00 perm=2 1\n").unwrap();
    let o = reflexlab(&["orbits", "--file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("orbit size 4"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn oversized_degree_is_a_resource_error() {
    let o = reflexlab(&["verify", "norms", "--family", "hyperoctahedral", "--n", "30"]);
    assert_eq!(o.status.code(), Some(3));
    let o = reflexlab(&[
        "group",
        "--family",
        "hyperoctahedral",
        "--n",
        "6",
        "--max-group-order",
        "1000",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn input_errors() {
    assert_eq!(reflexlab(&["verify", "norms"]).status.code(), Some(2));
    assert_eq!(
        reflexlab(&["verify", "dihedral", "--family", "hyperoctahedral", "--n", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        reflexlab(&["verify", "dihedral", "--family", "dihedral", "--n", "5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        reflexlab(&["verify", "norms", "--family", "iota-times-g0", "--g0", "1,2,3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(reflexlab(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn json_report_to_stdout() {
    let o = reflexlab(&[
        "verify", "dihedral", "--family", "dihedral", "--n", "6", "--json", "-",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "reflexlab-report/1");
    assert_eq!(v["status"], "pass");
    let check = &v["groups"][0]["checks"][0];
    assert_eq!(check["id"], "dihedral");
    assert_eq!(check["details"]["k0"], 1);
    assert!(check.get("wall_ms").is_none());
}

#[test]
fn timings_are_opt_in() {
    let o = reflexlab(&[
        "verify",
        "structure",
        "--family",
        "hyperoctahedral",
        "--n",
        "2",
        "--timings",
        "--json",
        "-",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["groups"][0]["checks"][0]["wall_ms"].is_u64());
}

#[test]
fn config_file_drives_a_run() {
    let dir = scratch_dir("config");
    std::fs::write(
        dir.join("b2.gens"),
        "degree 2\nsigns=10 perm=1 2\nsigns=00 perm=2 1\n",
    )
    .unwrap();
    let cfg = dir.join("run.toml");
    std::fs::write(
        &cfg,
        r#"
seed = 3
trials = 2
checks = ["norms", "pfister"]
e = ["1", "2"]

[[families]]
kind = "file"
path = "b2.gens"

[[families]]
kind = "iota-times-g0"
degree = 3
generators = [[2, 3, 1]]
"#,
    )
    .unwrap();
    let report = dir.join("out.json");
    let o = reflexlab(&[
        "verify",
        "--config",
        cfg.to_str().unwrap(),
        "--json",
        report.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["seed"], 3);
    let groups = v["groups"].as_array().unwrap();
    assert_eq!(groups.len(), 2);
    // e has two entries, so the degree-3 family cannot use it
    assert_eq!(groups[0]["checks"][1]["status"], "pass");
    assert_eq!(groups[1]["checks"][1]["status"], "skipped");
    let _ = std::fs::remove_dir_all(&dir);
}
