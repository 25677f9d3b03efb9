use std::path::PathBuf;
use std::process::{Command, Output};

fn om(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_om"))
        .args(args)
        .env_remove("OM_SALVETTI_MAX_N")
        .output()
        .expect("om runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, content: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("om-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

#[test]
fn verify_boolean_plane() {
    let o = om(&["verify", "--fixture", "boolean:2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("result: pass\n"));
}

#[test]
fn salvetti_f_vector_and_euler() {
    let o = om(&["salvetti", "--fixture", "generic:3:2", "--f-vector", "--euler"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "f=(6,12,6) χ=0"));
}

#[test]
fn gr_compare_nonpappus_rows_match() {
    let o = om(&["--json", "gr-compare", "--fixture", "nonpappus"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v["payload"]["rows"].as_array().unwrap();
    let nbc: Vec<u64> = rows.iter().map(|r| r["nbc"].as_u64().unwrap()).collect();
    assert_eq!(nbc, vec![1, 9, 28, 20]);
    assert!(rows.iter().all(|r| r["match"] == true));
}

#[test]
fn axiom_failure_exits_one_with_witness() {
    let path = scratch("no-zero.cov", "+0\n-0\n0+\n0-\n++\n+-\n-+\n--\n");
    let o = om(&["verify", "--in", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("V0: fail"));
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(om(&["verify", "--fixture", "nothing:3"]).status.code(), Some(2));
    assert_eq!(om(&["verify"]).status.code(), Some(2));
    assert_eq!(om(&["verify", "--in", "/nonexistent/file.cov"]).status.code(), Some(2));
    let zero = scratch("zero.arr", "rank 2\n0 0\n");
    assert_eq!(om(&["verify", "--in", zero.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(
        om(&["topes", "--fixture", "boolean:2", "--poset", "--base", "+0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        om(&["os-betti", "--fixture", "boolean:2", "--order", "1,1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn ground_set_cap_is_a_clean_error() {
    let o = Command::new(env!("CARGO_BIN_EXE_om"))
        .args(["verify", "--fixture", "boolean:3"])
        .env("OM_SALVETTI_MAX_N", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("exceeds"));
}

#[test]
fn octagon_with_trapezoid_fails_lmh_on_the_shared_edge() {
    let o = om(&["mh-check", "--example", "octagon-trapezoid"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("QMH: pass"));
    assert!(text.contains("LMH: fail at vertex v0, cell o2"));
}

#[test]
fn generated_files_read_back() {
    for format in ["cov", "arr", "chi"] {
        let o = om(&["gen", "--fixture", "generic:4:3", "--format", format]);
        assert_eq!(o.status.code(), Some(0));
        let path = scratch(&format!("g43.{format}"), &stdout(&o));
        let again = om(&["salvetti", "--in", path.to_str().unwrap()]);
        assert!(stdout(&again).contains("f=(14,48,48,14) χ=0"), "{format}");
    }
    let poset = om(&["salvetti", "--fixture", "boolean:2", "--poset"]);
    let path = scratch("b2.poset", &stdout(&poset));
    let o = om(&["mh-check", "--in", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn minimal_paths_to_the_antipode() {
    let o = om(&["paths", "--fixture", "generic:3:2", "--from", "+++", "--to", "---"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("2 minimal positive paths"));
}

#[test]
fn non_isomorphic_exits_one() {
    let o = om(&["isomorphic", "--fixture", "boolean:3", "--other-fixture", "generic:3:2"]);
    assert_eq!(o.status.code(), Some(1));
    let o = om(&["isomorphic", "--fixture", "braid:3", "--other-fixture", "generic:3:2"]);
    assert_eq!(o.status.code(), Some(0));
}
