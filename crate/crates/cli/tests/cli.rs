use std::path::PathBuf;
use std::process::{Command, Output};

fn system(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "systems", name].iter().collect();
    path.to_string_lossy().into_owned()
}

fn hwg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hwg")).args(args).output().expect("spawn hwg")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn list_prints_every_claim() {
    let out = hwg(&["verify", "--list"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for id in ["hecke-axioms", "thm2.2", "prop3.1", "rem4.9"] {
        assert!(text.lines().any(|l| l.starts_with(id)), "{id} missing");
    }
    assert_eq!(text.lines().count(), 26);
}

#[test]
fn describe_reports_order() {
    let out = hwg(&["describe", "--system", &system("b3_unequal.json")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("order: 48"));
    assert!(text.contains("L(s1) = [1, 0]"));
}

#[test]
fn enumerate_json_lists_elements() {
    let out = hwg(&["enumerate", "--system", &system("a2.json"), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let rows: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 6);
}

#[test]
fn passing_claim_exits_zero() {
    let out = hwg(&["verify", "--system", &system("a2.json"), "--claim", "prop1.1", "--J", "s1"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["header"]["generators"], serde_json::json!(["s1", "s2"]));
    assert_eq!(doc["reports"][0]["status"], "pass");
}

#[test]
fn failing_claim_exits_one_with_witness() {
    let out = hwg(&["verify", "--system", &system("a2.json"), "--claim", "thm2.8", "--J", "s1", "--K", "s1,s2"]);
    assert_eq!(out.status.code(), Some(1));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let report = &doc["reports"][0];
    assert_eq!(report["status"], "fail");
    assert!(report["witnesses"][0].as_str().unwrap().starts_with("s1s2"));
}

#[test]
fn bad_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.json");
    assert_eq!(hwg(&["describe", "--system", missing.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(hwg(&["describe", "--system", &system("affine_a1.json")]).status.code(), Some(2));
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"generators":["a","b"],"matrix":[[1,3],[2,1]]}"#).unwrap();
    assert_eq!(hwg(&["describe", "--system", bad.to_str().unwrap()]).status.code(), Some(2));
    let out = hwg(&["verify", "--system", &system("a2.json"), "--claim", "no-such-claim"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn ideal_rpoly_csv() {
    let out = hwg(&["rpoly", "--system", &system("a2.json"), "--kind", "ideal", "--E", "s1", "--J", "s2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(body, ["sigma,tau,poly", "e,e,1", "e,s1,q-1", "s1,s1,1"]);
    assert!(text.contains("# kind: \"ideal\""));
}

#[test]
fn rpoly_json_to_file_matches_ideal_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = hwg(&[
        "rpoly",
        "--system",
        &system("a2.json"),
        "--kind",
        "ideal",
        "--E",
        &system("ideal_s1.json"),
        "--J",
        "s2",
        "--out",
        "json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["context"]["kind"], "ideal");
}

#[test]
fn solve_then_reuse_rtable() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rows.json");
    let a2 = system("a2.json");
    let out = hwg(&["solve-rtable", "--system", &a2, "--E", "s1", "--J", "s2", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let rows: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(rows, serde_json::json!([{"s": "s2", "y": "s1", "z": "e", "poly": [[[4], 1]]}]));

    let out = hwg(&["verify", "--system", &a2, "--claim", "prop1.5", "--E", "s1", "--J", "s2", "--rtable", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));

    // r_e = 0 breaks the braid relation
    std::fs::write(&path, r#"[{"s":"s2","y":"s1","z":"e","poly":[]}]"#).unwrap();
    let out = hwg(&["verify", "--system", &a2, "--claim", "prop1.5", "--E", "s1", "--J", "s2", "--rtable", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn check_hypotheses_exit_codes() {
    let out = hwg(&["check-hypotheses", "--system", &system("a1xa1.json"), "--E", "e", "--J", "s1", "--K", "s1,s2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let out = hwg(&["check-hypotheses", "--system", &system("a2.json"), "--E", "e", "--J", "s1", "--K", "s1,s2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("{s1s2}"));
}

#[test]
fn verify_all_is_deterministic() {
    let a1xa1 = system("a1xa1.json");
    let first = hwg(&["verify", "--system", &a1xa1, "--all"]);
    let second = hwg(&["verify", "--system", &a1xa1, "--all"]);
    assert_eq!(first.stdout, second.stdout);
    let doc: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert!(doc["reports"].as_array().unwrap().len() > 26);
}
