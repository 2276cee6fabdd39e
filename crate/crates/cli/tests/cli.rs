use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_talenti")).args(args).output().expect("binary runs")
}

fn cfg(name: &str) -> String {
    configs().join(name).to_string_lossy().into_owned()
}

fn write_config(dir: &tempfile::TempDir, name: &str, body: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn weight_checks_report_exit_codes() {
    assert_eq!(run(&["check-weights", "--config", &cfg("weights_pass.json"), "--quiet"]).status.code(), Some(0));
    let fail = run(&["check-weights", "--config", &cfg("weights_fail.json"), "--quiet"]);
    assert_eq!(fail.status.code(), Some(2));
    let doc: serde_json::Value = serde_json::from_slice(&fail.stdout).unwrap();
    assert_eq!(doc["condition"]["status"], "fail");
    assert!(doc["config_hash"].as_str().unwrap().len() == 64);
    assert_eq!(run(&["check-weights", "--config", "/nonexistent/config.json"]).status.code(), Some(1));
}

#[test]
fn malformed_and_out_of_range_configs_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let broken = write_config(&dir, "broken.json", "{\"weight\": ");
    assert_eq!(run(&["check-weights", "--config", &broken]).status.code(), Some(1));
    let text = std::fs::read_to_string(configs().join("compare_rect.json")).unwrap();
    let q = write_config(&dir, "q.json", &text.replace("[0.5, 1.0, 2.0]", "[0.5, 2.5]"));
    let out = run(&["compare", "--config", &q]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("outside (0, 2]"));
}

#[test]
fn zero_trials_give_an_empty_table() {
    let out = run(&["isoperimetry", "--config", &cfg("isoperimetry.json"), "--trials", "0", "--quiet"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "seed,n_vertices,mu_A,t_A,P_A,P_RA,gap_bound,slack,holds\n");
}

#[test]
fn unmet_condition_stops_isoperimetry() {
    let out = run(&["isoperimetry", "--config", &cfg("weights_fail.json"), "--trials", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn isoperimetry_table_holds() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("iso.csv");
    let out = run(&[
        "isoperimetry",
        "--config",
        &cfg("isoperimetry.json"),
        "--trials",
        "20",
        "--out",
        path.to_str().unwrap(),
        "--quiet",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(path).unwrap();
    assert_eq!(text.lines().count(), 21);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn zero_source_compares_trivially() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(configs().join("compare_rect.json")).unwrap();
    let start = text.find("\"source\"").unwrap();
    let end = start + text[start..].find('}').unwrap() + 1;
    let zero = format!("{}\"source\": {{\"kind\": \"constant\", \"value\": 0.0}}{}", &text[..start], &text[end..]);
    let path = write_config(&dir, "zero.json", &zero);
    let out = run(&["compare", "--config", &path, "--quiet"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["report"]["max_violation"], 0.0);
    assert_eq!(doc["source_strictly_positive"], false);
    for q in doc["report"]["qnorms"].as_array().unwrap() {
        assert_eq!(q["lhs"], 0.0);
        assert_eq!(q["rhs"], 0.0);
    }
    let solved = run(&["solve", "--config", &path, "--quiet"]);
    let csv = String::from_utf8(solved.stdout).unwrap();
    assert!(csv.lines().skip(1).all(|l| l.ends_with(",0.0000000000000000e0")));
}

#[test]
fn slab_compare_passes_and_profile_is_written() {
    let out = run(&["compare", "--config", &cfg("compare_slab.json"), "--quiet"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["interpretation_flags"][1], "v-orientation=nondecreasing");
    assert!(doc["report"]["max_violation"].as_f64().unwrap() <= 5e-2);
    let prof = run(&["symmetrize", "--config", &cfg("compare_slab.json"), "--quiet"]);
    let csv = String::from_utf8(prof.stdout).unwrap();
    assert!(csv.starts_with("z,v,dv_dz\n"));
    let second = csv.lines().nth(1).unwrap();
    assert!(second.split(',').nth(1).unwrap() == "0.0000000000000000e0");
}

#[test]
fn hardy_command_is_deterministic() {
    let a = run(&["hardy", "--config", &cfg("hardy.json"), "--trials", "200", "--quiet"]);
    let b = run(&["hardy", "--config", &cfg("hardy.json"), "--trials", "200", "--quiet"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
